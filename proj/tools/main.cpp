#include <iostream>

#include "virtlab/cli.hpp"

int main(int argc, char** argv) {
  return virtlab::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
