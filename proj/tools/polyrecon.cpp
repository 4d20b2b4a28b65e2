#include <iostream>

#include "polyrecon/cli.hpp"

int main(int argc, char** argv) { return polyrecon::cli::run(argc, argv, std::cout, std::cerr); }
