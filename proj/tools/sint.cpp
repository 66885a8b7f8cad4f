#include <iostream>
#include <string>
#include <vector>

#include "sint/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sint::cli::run(args, std::cout, std::cerr);
}
