#include <iostream>

#include "qps/cli/commands.hpp"

int main(int argc, char** argv) { return qps::cli::run(argc, argv, std::cout, std::cerr); }
