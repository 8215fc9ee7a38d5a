#include <iostream>

#include "topfan/cli.hpp"

int main(int argc, char** argv) { return topfan::cli::run(argc, argv, std::cout, std::cerr); }
