#include <iostream>

#include "cmtori/cli.hpp"

int main(int argc, char** argv) { return cmtori::run_cli(argc, argv, std::cout, std::cerr); }
