#include <iostream>

#include "wharm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wharm::cli::run(args, std::cout, std::cerr);
}
