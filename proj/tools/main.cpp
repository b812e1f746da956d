#include <iostream>
#include <string>
#include <vector>

#include "ordercdf/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ordercdf::cli::main_with_args(std::move(args), std::cout, std::cerr);
}
