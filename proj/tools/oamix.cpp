#include <iostream>

#include "oamix/cli.hpp"

int main(int argc, char** argv) { return oamix::cli::run(argc, argv, std::cout, std::cerr); }
