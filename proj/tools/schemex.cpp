#include <iostream>
#include <string>
#include <vector>

#include "schemex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return schemex::cli::run(args, std::cout, std::cerr);
}
