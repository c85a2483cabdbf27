#include <iostream>

#include "polydisk/cli.hpp"

int main(int argc, char** argv) {
  return polydisk::cli::run_cli(argc, argv, std::cout, std::cerr);
}
