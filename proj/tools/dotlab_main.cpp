#include <iostream>

#include "dotlab/cli.hpp"

int main(int argc, char** argv) {
  return dotlab::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
