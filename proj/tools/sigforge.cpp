#include <iostream>

#include "sigforge/cli.hpp"

int main(int argc, char** argv) { return sigforge::cli::run(argc, argv, std::cout, std::cerr); }
