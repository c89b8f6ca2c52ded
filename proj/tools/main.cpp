#include "hyperpot/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hyperpot::cli::run(argc, argv, std::cout, std::cerr); }
