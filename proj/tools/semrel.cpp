#include <iostream>

#include "semrel/cli.hpp"

int main(int argc, char** argv) { return semrel::run_cli(argc, argv, std::cout, std::cerr); }
