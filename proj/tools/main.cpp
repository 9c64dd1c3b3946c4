#include <iostream>

#include "chowdiag/cli.hpp"

int main(int argc, char** argv) {
    return chowdiag::run_cli(argc, argv, std::cout, std::cerr);
}
