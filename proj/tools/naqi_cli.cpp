#include <iostream>

#include "naqi/cli.hpp"

int main(int argc, char** argv) { return naqi::run_cli(argc, argv, std::cout, std::cerr); }
