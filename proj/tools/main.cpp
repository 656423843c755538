#include <iostream>
#include <string>
#include <vector>

#include "floorform/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return floorform::cli::run_cli(args, std::cout, std::cerr);
}
