#include <iostream>

#include "nbldpc/cli.hpp"

int main(int argc, char** argv) { return nbldpc::run_cli(argc, argv, std::cout, std::cerr); }
