// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "smallf/acceptance.hpp"
#include "smallf/parallel.hpp"

int main(int argc, char** argv) {
  smallf::AcceptanceConfig cfg;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      cfg.only.push_back(std::atoi(argv[++i]));
    } else if (a == "--threads" && i + 1 < argc) {
      smallf::set_parallelism(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--only ID]... [--threads N]\n", argv[0]);
      return 2;
    }
  }
  bool all = true;
  smallf::run_acceptance(cfg, [&](const smallf::CriterionResult& r) {
    all = all && r.pass;
    std::printf("%s\n", smallf::render_line(r).c_str());
    std::fflush(stdout);
  });
  return all ? 0 : 1;
}
