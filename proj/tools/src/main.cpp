#include <iostream>

#include "cdr/cli/app.hpp"

int main(int argc, char** argv) { return cdr::cli::main_entry(argc, argv, std::cout, std::cerr); }
