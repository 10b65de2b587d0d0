#include <iostream>

#include "ugkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ugkit::run(args, std::cout, std::cerr);
}
