#include <iostream>

#include "d21/cli.hpp"

int main(int argc, char** argv) { return d21::run_cli(argc, argv, std::cout, std::cerr); }
