#include <iostream>

#include "padicframe/cli.hpp"

int main(int argc, char** argv) { return padicframe::runCli(argc, argv, std::cout, std::cerr); }
