#pragma once

#include <string>
#include <vector>

namespace smallball {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Named self-check suites at pinned seeds and sizes:
//   dp            exact p-variation DP against the brute-force oracle
//   lemmas        block-decomposition inequalities on simulated paths,
//                 plus synthetic premise paths for the inclusion bound
//   laplace       truncated-jump and direct Laplace transforms vs closed form
//   subordination pathwise Hoelder bound on subordinated paths
//   gaussian      Brownian sup-norm small-ball vs the theta-series oracle
// Throws std::invalid_argument on an unknown suite name.
std::vector<CheckResult> verify_suite(const std::string& suite, unsigned threads);

}  // namespace smallball
