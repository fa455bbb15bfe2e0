#include <iostream>
#include <string>
#include <vector>

#include "spinlab/cli.h"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return spinlab::runCli(args, std::cout, std::cerr);
}
