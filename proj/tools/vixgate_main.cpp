#include <iostream>
#include <string>
#include <vector>

#include "vixgate/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vixgate::cli::main(std::move(args), std::cout, std::cerr);
}
