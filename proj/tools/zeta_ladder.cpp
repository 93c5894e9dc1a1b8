#include <iostream>

#include "zeta_ladder/cli.hpp"

int main(int argc, char** argv) { return zeta_ladder::cli::run(argc, argv, std::cout, std::cerr); }
