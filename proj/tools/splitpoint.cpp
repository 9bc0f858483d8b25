#include <iostream>

#include "splitpoint/cli.hpp"

int main(int argc, char** argv) {
  return splitpoint::run_cli(argc, argv, std::cout, std::cerr);
}
