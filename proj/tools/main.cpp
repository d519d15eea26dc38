// main.cpp — qtf command-line entry point

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return qtf::cli::run(argc, argv, std::cout, std::cerr); }
