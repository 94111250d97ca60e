#include <iostream>
#include <string>
#include <vector>

#include "potspec/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return potspec::cli::run(args, std::cout, std::cerr);
}
