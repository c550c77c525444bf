#include <iostream>
#include <string>
#include <vector>

#include "vcsp/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = vcsp::run_command(args);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
