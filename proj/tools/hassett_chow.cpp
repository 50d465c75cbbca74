#include <iostream>

#include "hassett/cli.hpp"

int main(int argc, char** argv) {
  return hassett::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
