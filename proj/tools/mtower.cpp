#include <iostream>
#include <string>
#include <vector>

#include "mtower/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mtower::cli::run(args, std::cout, std::cerr);
}
