#include <iostream>
#include <string>
#include <vector>

#include "mwehsd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mwehsd::dispatch(args, std::cout, std::cerr);
}
