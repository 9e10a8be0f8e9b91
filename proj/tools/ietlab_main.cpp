#include <vector>

#include "ietlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ietlab::dispatch(args);
}
