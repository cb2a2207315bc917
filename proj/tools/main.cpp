#include <iostream>

#include "pptbounds/cli.hpp"

int main(int argc, char **argv) {
    return pptbounds::run_cli(argc, argv, std::cout, std::cerr);
}
