#include "commands.h"

#include <iostream>

int main(int argc, char** argv) { return adaptem::cli::run_cli(argc, argv, std::cout, std::cerr); }
