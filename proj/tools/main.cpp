#include <iostream>
#include <string>
#include <vector>

#include "icci/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const int code = icci::dispatch(args, std::cout, std::cerr);
  std::cout.flush();
  if (!std::cout) return icci::kExitIo;
  return code;
}
