#include <iostream>

#include "rhlab/cli/app.hpp"

int main(int argc, char** argv) { return rhlab::cli::run(argc, argv, std::cout, std::cerr); }
