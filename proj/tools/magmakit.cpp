#include <iostream>
#include <string>
#include <vector>

#include "magmakit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return magmakit::run(args, std::cout, std::cerr);
}
