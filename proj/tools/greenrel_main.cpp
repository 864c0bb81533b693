#include <iostream>
#include <string>
#include <vector>

#include "greenrel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return greenrel::cli::run(args, std::cout, std::cerr);
}
