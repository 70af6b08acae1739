#include <iostream>

#include "thetapr/cli.hpp"

int main(int argc, char** argv) {
    return thetapr::cli::run(argc, argv, std::cout, std::cerr);
}
