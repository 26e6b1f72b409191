#include <iostream>

#include "orthostiff/cli.hpp"

int main(int argc, char** argv) { return orthostiff::run(argc, argv, std::cout, std::cerr); }
