#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "nil/cli.hpp"

int main(int argc, char** argv) {
  nil::cli::RunOptions options;
  options.color = isatty(STDOUT_FILENO) && std::getenv("NIL_NO_COLOR") == nullptr;
  return nil::cli::run({argv + 1, argv + argc}, std::cout, std::cerr, options);
}
