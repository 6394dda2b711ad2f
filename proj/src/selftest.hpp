#pragma once

#include <string>

namespace pqov::selftest {

struct Options {
  // Fault-injection hook: added to every Bessel value inside the recurrence
  // checks. Nonzero values must make the suite fail.
  double bessel_perturbation = 0.0;
  int threads = 0;
};

struct Report {
  bool all_passed = false;
  std::string text;  // deterministic pass/fail table
};

// Reduced-size cross-module checks: Bessel recurrences, lens-transform
// equivalence (q=0,2), Wigner reality and parity at the origin, the marginal
// property at one point, and the q=1 phase-jump count.
Report run(const Options& options = {});

}  // namespace pqov::selftest
