#include "cubiph/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cubiph::cli::run(argc, argv, std::cout, std::cerr); }
