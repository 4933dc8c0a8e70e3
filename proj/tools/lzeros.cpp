#include <iostream>

#include "lzeros/cli.hpp"

int main(int argc, char** argv) { return lzeros::cli::run(argc, argv, std::cout, std::cerr); }
