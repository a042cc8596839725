// Standalone acceptance runner: executes the nine built-in checks and prints
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>

#include "northcott/selftest.hpp"

int main() {
  bool all_pass = true;
  for (const northcott::CheckResult& res : northcott::run_checks(false)) {
    std::printf("criterion %d: %s  %s  (%.2f s)%s%s\n", res.id,
                res.pass ? "PASS" : "FAIL", res.name.c_str(), res.seconds,
                res.detail.empty() ? "" : "  -- ", res.detail.c_str());
    all_pass = all_pass && res.pass;
  }
  return all_pass ? 0 : 1;
}
