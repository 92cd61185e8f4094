#include <iostream>

#include "dotrace/cli.hpp"

int main(int argc, char** argv) { return dotrace::cli::run(argc, argv, std::cout, std::cerr); }
