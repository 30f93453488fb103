#include <iostream>
#include <string>
#include <vector>

#include "adderkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return adderkit::cli::run(args, std::cout, std::cerr);
}
