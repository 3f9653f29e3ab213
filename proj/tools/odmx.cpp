#include <iostream>
#include <string>
#include <vector>

#include "odmx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return odmx::cli::run(args, std::cout, std::cerr);
}
