#ifndef SKEWDRY_VERIFY_HPP
#define SKEWDRY_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace skewdry {

struct CheckResult {
  std::string name;
  double measured = 0.0;   // worst observed error / statistic
  double threshold = 0.0;  // pass iff measured < threshold
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  bool quick = false;        // reduced sample sizes, < 60 s budget
  double alpha_bias = 0.0;   // fault injection for the jump-ratio check
  std::uint64_t seed = 20240817;
};

/// Runs the cross-layer verification checks in a fixed order; each entry
/// corresponds to one acceptance property (transform normalizations, root
/// identities, density normalization, Monte Carlo agreement, ...).
std::vector<CheckResult> run_verification(const VerifyOptions& opts);

/// Pretty pass/fail table. Returns true iff all checks pass.
bool print_verification(const std::vector<CheckResult>& results,
                        std::ostream& out);

}  // namespace skewdry

#endif
