#include <iostream>

#include "slln/cli.hpp"

int main(int argc, char** argv) { return slln::run_cli(argc, argv, std::cout, std::cerr); }
