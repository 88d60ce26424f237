#include "fluxlde/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fluxlde::cli::run(argc, argv, std::cout, std::cerr); }
