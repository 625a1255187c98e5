#include <iostream>

#include "cgvv/cli.hpp"

int main(int argc, char** argv) { return cgvv::cli::main(argc, argv, std::cout, std::cerr); }
