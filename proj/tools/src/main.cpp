#include <iostream>
#include <string>
#include <vector>

#include "entail/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = entail::cli::run_command(args);
  (result.exit_code == 2 ? std::cerr : std::cout) << result.output;
  return result.exit_code;
}
