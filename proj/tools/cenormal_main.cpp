#include <iostream>
#include <string>
#include <vector>

#include "cenormal/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cenormal::cli::run(args, std::cout, std::cerr);
}
