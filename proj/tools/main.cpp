#include <iostream>

#include "treenodal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return treenodal::run(args, std::cout, std::cerr);
}
