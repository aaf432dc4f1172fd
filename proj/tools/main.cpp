#include <iostream>
#include <string>
#include <vector>

#include "hcat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hcat::cli::run(args, std::cout, std::cerr);
}
