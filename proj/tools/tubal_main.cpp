#include <iostream>

#include "tubal/commands.hpp"

int main(int argc, char** argv) { return tubal::cli::main(argc, argv, std::cout, std::cerr); }
