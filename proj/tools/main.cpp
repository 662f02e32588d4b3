#include "unitfrac/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return unitfrac::cli::run(argc, argv, std::cout, std::cerr); }
