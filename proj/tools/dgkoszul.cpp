#include <iostream>

#include "dgk/cli/cli.hpp"

int main(int argc, char** argv) { return dgk::cli::run_cli(argc, argv, std::cout, std::cerr); }
