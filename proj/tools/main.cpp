#include <iostream>
#include <vector>

#include "tfg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tfg::run_cli(args, std::cout, std::cerr);
}
