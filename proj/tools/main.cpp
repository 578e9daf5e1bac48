#include <iostream>

#include "c4/cli.hpp"

int main(int argc, char** argv) { return c4::cli_main(argc, argv, std::cout, std::cerr); }
