#include <iostream>

#include "orbitcov/cli.hpp"

int main(int argc, char** argv)
{
    return orbitcov::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
