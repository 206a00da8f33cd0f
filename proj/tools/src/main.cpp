#include <iostream>

#include "zf_cli/cli.hpp"

int main(int argc, char **argv) { return zf::cli::cli_main(argc, argv, std::cout, std::cerr); }
