#include <iostream>

#include "rankeval/cli.hpp"

int main(int argc, char** argv) { return rankeval::cli::run(argc, argv, std::cout, std::cerr); }
