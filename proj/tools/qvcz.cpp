#include <iostream>

#include "qvcz/commands.hpp"

int main(int argc, char** argv) { return qvcz::run_cli(argc, argv, std::cout, std::cerr); }
