#include <iostream>

#include "homogflow/cli.hpp"

int main(int argc, char** argv) { return homogflow::run_cli(argc, argv, std::cout, std::cerr); }
