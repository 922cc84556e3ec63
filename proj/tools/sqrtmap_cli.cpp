#include <iostream>
#include <string>
#include <vector>

#include "sqrtmap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sqrtmap::run_cli(args, std::cout, std::cerr);
}
