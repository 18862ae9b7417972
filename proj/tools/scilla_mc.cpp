#include <iostream>

#include "scilla/cli.hpp"

int main(int argc, char** argv) { return scilla::cli::run(argc, argv, std::cout, std::cerr); }
