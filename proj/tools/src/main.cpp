#include <iostream>

#include "bellmax_cli/cli.hpp"

int main(int argc, char** argv) { return bellmax::cli::run(argc, argv, std::cout, std::cerr); }
