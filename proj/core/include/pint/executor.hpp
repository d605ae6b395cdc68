#pragma once

#include <cstddef>
#include <memory>

#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace pint {

/// Runs independent indexed tasks on up to `workers` threads.
///
/// Tasks must write only to their own output slot; with that contract the
/// outcome does not depend on the worker count.
class Executor {
public:
    explicit Executor(std::size_t workers = 1)
        : workers_(workers == 0 ? 1 : workers)
    {
        if (workers_ > 1) {
            arena_ = std::make_unique<tbb::task_arena>(static_cast<int>(workers_));
        }
    }

    [[nodiscard]] std::size_t workers() const noexcept { return workers_; }

    template <typename Fn>
    void parallel_for(std::size_t count, Fn&& fn) const
    {
        if (!arena_ || count < 2) {
            for (std::size_t i = 0; i < count; ++i) fn(i);
            return;
        }
        arena_->execute([&] { tbb::parallel_for(std::size_t{0}, count, [&](std::size_t i) { fn(i); }); });
    }

private:
    std::size_t workers_;
    std::unique_ptr<tbb::task_arena> arena_;
};

} // namespace pint
