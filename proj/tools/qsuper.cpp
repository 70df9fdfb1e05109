#include "qsuper/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qsuper::run_cli(argc, argv, std::cout, std::cerr); }
