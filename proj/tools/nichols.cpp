#include "nichols/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return nichols::run_cli(argc, argv, std::cout, std::cerr); }
