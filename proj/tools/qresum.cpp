#include <iostream>

#include "qresum/commands.hpp"

int main(int argc, char** argv) { return qresum::run_cli(argc, argv, std::cout, std::cerr); }
