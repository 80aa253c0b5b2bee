#include <iostream>

#include "trycolor/cli.hpp"

int main(int argc, char** argv) {
    return trycolor::cli_main(argc, argv, std::cout, std::cerr);
}
