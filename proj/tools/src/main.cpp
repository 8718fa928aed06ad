#include <iostream>

#include "hourscap/io/cli.hpp"

int main(int argc, char** argv) { return hourscap::io::cli_main(argc, argv, std::cout, std::cerr); }
