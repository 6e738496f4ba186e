#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "modinv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::optional<std::string> cache_dir;
  if (const char* env = std::getenv(modinv::cli::kCacheEnvVar)) cache_dir = env;
  return modinv::cli::main_entry(args, std::cout, std::cerr, cache_dir);
}
