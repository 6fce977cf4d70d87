#include <iostream>
#include <string>
#include <vector>

#include "vgr_tools/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return vgr::cli::run_cli(args, std::cout, std::cerr);
}
