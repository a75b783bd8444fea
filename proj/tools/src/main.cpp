#include <iostream>
#include <string>
#include <vector>

#include "obslab_cli/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv, argv + argc);
  return obslab::cli::run(args, std::cin, std::cout, std::cerr);
}
