#include <iostream>
#include <string>
#include <vector>

#include "ksetlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kset::cli::run(args, std::cout, std::cerr);
}
