#include <iostream>

#include "qrg/cli.hpp"

int main(int argc, char** argv) {
    return qrg::run_main(argc, argv, std::cout, std::cerr);
}
