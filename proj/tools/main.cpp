#include <iostream>
#include <string>
#include <vector>

#include "semispread/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return semispread::dispatch(args, std::cout, std::cerr);
}
