#include <iostream>
#include <vector>

#include "dynpair/cli_driver.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dynpair::run_cli(args, std::cout, std::cerr);
}
