#include <iostream>

#include "orbitcensus/cli.hpp"

int main(int argc, char** argv) { return orbitcensus::cli::run(argc, argv, std::cout, std::cerr); }
