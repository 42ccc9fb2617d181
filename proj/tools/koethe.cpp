#include <iostream>

#include "koethe/cli.hpp"

int main(int argc, char** argv) { return koethe::run_cli(argc, argv, std::cout, std::cerr); }
