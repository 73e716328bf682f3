#include "benford/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return benford::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
