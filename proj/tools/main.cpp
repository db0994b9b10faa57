#include <iostream>
#include <string>
#include <vector>

#include "qaut/cli.hpp"

int main(int argc, char** argv) {
  const qaut::CliResult result = qaut::cli_run(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << result.output;
  return result.code;
}
