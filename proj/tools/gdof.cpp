#include <iostream>

#include "gdof/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gdof::cli::run(std::move(args), std::cout, std::cerr);
}
