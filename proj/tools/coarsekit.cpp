#include <iostream>

#include "coarsekit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return coarsekit::cli::run(args, std::cout, std::cerr);
}
