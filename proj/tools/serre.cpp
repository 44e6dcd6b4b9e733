#include <iostream>

#include "serre/cli.hpp"

int main(int argc, char** argv) { return serre::cli::run(argc, argv, std::cout, std::cerr); }
