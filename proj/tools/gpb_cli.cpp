#include <iostream>

#include "gpb/cli.hpp"

int main(int argc, char** argv) { return gpb::run_cli(argc, argv, std::cout, std::cerr); }
