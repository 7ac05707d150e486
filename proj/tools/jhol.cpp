#include <iostream>

#include "jhol/cli.hpp"

int main(int argc, char** argv) { return jhol::cli::run(argc, argv, std::cout, std::cerr); }
