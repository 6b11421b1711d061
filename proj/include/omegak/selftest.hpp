#pragma once

#include <string>
#include <vector>

namespace omegak {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  // Fault injection: perturbs pi_2(7) in the table the Gauss check sees.
  bool corrupt_prime_table = false;
};

/// Cross-oracle suite over small fields and degrees. Every check runs; the
/// first failing entry names the broken identity.
std::vector<SelftestCheck> run_selftest(const SelftestOptions& options = {});

}  // namespace omegak
