#include <iostream>

#include "msets/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return msets::cli::run(args, std::cout, std::cerr);
}
