#include <iostream>

#include "groom/cli.hpp"

int main(int argc, char** argv) { return groom::run_cli(argc, argv, std::cout, std::cerr); }
