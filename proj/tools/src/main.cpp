#include <iostream>

#include "otfa_cli/cli.hpp"

int main(int argc, char** argv) { return otfa::cli::dispatch(argc, argv, std::cout, std::cerr); }
