#include "gle/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gle::cli::run(argc, argv, std::cout, std::cerr); }
