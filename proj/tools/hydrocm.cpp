#include <iostream>

#include "hydrocm/cli.hpp"

int main(int argc, char** argv) { return hydrocm::cli::main(argc, argv, std::cout, std::cerr); }
