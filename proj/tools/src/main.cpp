#include <iostream>

#include "ncft_cli/cli.hpp"

int main(int argc, char** argv) { return ncft::cli::run(argc, argv, std::cout, std::cerr); }
