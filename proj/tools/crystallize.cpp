#include <iostream>

#include "crystallize/cli.hpp"

int main(int argc, char** argv) {
  using namespace crystallize::cli;
  try {
    const auto config = parse_config(argc, argv);
    if (!config) return kExitOk;
    return run(*config);
  } catch (const ConfigError& e) {
    std::cerr << "crystallize: " << e.what() << "\n";
    return kExitUsage;
  }
}
