#include <iostream>
#include <string>
#include <vector>

#include "completeness/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return completeness::cli::run(args, std::cout, std::cerr);
}
