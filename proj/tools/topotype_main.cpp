#include <iostream>

#include "topotype/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return topotype::run_cli(args, std::cout, std::cerr);
}
