#include <iostream>

#include "ncwit/cli.hpp"

int main(int argc, char** argv) { return ncwit::cli::run(argc, argv, std::cout, std::cerr); }
