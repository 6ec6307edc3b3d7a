#include <iostream>

#include "angulab/cli/app.hpp"

int main(int argc, char** argv) { return angulab::cli::run_cli(argc, argv, std::cout, std::cerr); }
