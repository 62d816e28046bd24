#include <iostream>
#include <string>
#include <vector>

#include "ucurve/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return ucurve::cli::run(args, std::cout, std::cerr);
}
