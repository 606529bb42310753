#include <iostream>

#include "kloos/cli.hpp"

int main(int argc, char** argv) { return kloos::run_cli(argc, argv, std::cout, std::cerr); }
