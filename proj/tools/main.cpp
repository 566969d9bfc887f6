#include <iostream>
#include <string>
#include <vector>

#include "mfs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mfs::run_cli(args, std::cout, std::cerr);
}
