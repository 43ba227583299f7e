#include <string>
#include <vector>

#include "fastlight/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fastlight::cli_dispatch(args);
}
