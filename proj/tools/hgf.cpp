#include <iostream>

#include "hgf/cli.hpp"

int main(int argc, char** argv) { return hgf::cli::main_entry(argc, argv, std::cout, std::cerr); }
