#include <iostream>

#include "iggp/cli.hpp"

int main(int argc, char** argv) { return iggp::run_cli(argc, argv, std::cout, std::cerr); }
