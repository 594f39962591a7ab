#include <iostream>
#include <string>
#include <vector>

#include "gsplab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gsplab::cli::run(args, std::cout, std::cerr);
}
