#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  toral::acceptance::Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) {
      opt.seed = std::stoull(argv[++i]);
    } else if (a == "--golden" && i + 1 < argc) {
      opt.golden_dir = argv[++i];
    } else if (a == "--only" && i + 1 < argc) {
      opt.only.insert(std::stoi(argv[++i]));
    } else {
      std::cerr << "usage: toral_acceptance [--seed N] [--golden DIR] [--only ID]...\n";
      return 2;
    }
  }
  const auto results = toral::acceptance::run(opt, std::cout);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
