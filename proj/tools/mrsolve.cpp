#include <iostream>

#include "markoff/cli.hpp"

int main(int argc, char** argv) { return markoff::run_cli(argc, argv, std::cout, std::cerr); }
