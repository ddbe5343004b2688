#include <iostream>
#include <string>
#include <vector>

#include "crowdsim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return crowdsim::cli::main(args, std::cout, std::cerr);
}
