#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "irrkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto res = irrkit::cli::dispatch(args);
  std::cout << res.output;
  if (res.exit_code == irrkit::cli::kInputError && res.payload.contains("error"))
    std::cerr << "irrkit: " << res.payload["error"].get<std::string>() << "\n";
  return res.exit_code;
}
