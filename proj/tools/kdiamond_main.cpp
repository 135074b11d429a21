#include <iostream>

#include "kdiamond/cli.hpp"

int main(int argc, char** argv) { return kdiamond::run_cli(argc, argv, std::cout, std::cerr); }
