#include <iostream>
#include <string>
#include <vector>

#include "modlie/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return modlie::cli::run(args, std::cout, std::cerr);
}
