#include <iostream>

#include "tnvs/cli.hpp"

int main(int argc, char** argv) { return tnvs::run_cli(argc, argv, std::cout, std::cerr); }
