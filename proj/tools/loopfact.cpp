#include <iostream>

#include "loopfact/cli.hpp"

int main(int argc, char** argv) {
  return loopfact::run_cli(argc, argv, std::cout, std::cerr);
}
