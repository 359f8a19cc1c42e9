#include <iostream>

#include "hha/cli.hpp"

int main(int argc, char** argv) { return hha::run_cli(argc, argv, std::cout, std::cerr); }
