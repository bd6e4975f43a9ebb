#include <iostream>
#include <string>
#include <vector>

#include "timely/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return timely::cli::run(args, std::cout, std::cerr);
}
