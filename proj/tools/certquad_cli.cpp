#include <iostream>

#include "certquad/cli.hpp"

int main(int argc, char** argv) { return certquad::cli::run(argc, argv, std::cout, std::cerr); }
