#include "p7col/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return p7col::dispatch(args, std::cin, std::cout, std::cerr);
}
