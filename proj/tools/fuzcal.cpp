#include <iostream>
#include <string>
#include <vector>

#include "fuzcal/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fuzcal::cli::run(args, std::cout, std::cerr);
}
