#include <iostream>

#include "swivel/cli/app.hpp"

int main(int argc, char** argv) { return swivel::cli::run(argc, argv, std::cout, std::cerr); }
