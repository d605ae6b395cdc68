#include "pint_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return pint::cli::run(argc, argv, std::cout, std::cerr);
}
