#include <iostream>
#include <string>
#include <vector>

#include "lexcomp/cli/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lexcomp::cli::dispatch(args, std::cout, std::cerr);
}
