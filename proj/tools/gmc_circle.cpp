#include <iostream>

#include "gmc/cli.hpp"

int main(int argc, char** argv) {
  return gmc::cli::run_cli(argc, argv, std::cout, std::cerr);
}
