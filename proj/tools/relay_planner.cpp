#include <iostream>
#include <string>
#include <vector>

#include "uwrelay/cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return uwrelay::cli::run(args, std::cout, std::cerr);
}
