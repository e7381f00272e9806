#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gradealg.hpp"
#include "rootsys.hpp"

namespace ceppa {

struct VerifyOptions {
  FamilyType family = FamilyType::A;
  int rank = 2;
  std::string mu_mode = "rho";  // rho | random | csv
  std::vector<Rat> mu;          // used when mu_mode == "csv"
  std::string suite = "all";    // algebra | b-algebra | lie | all
  std::uint64_t seed = 1;
  std::int64_t budget = kDefaultBudget;
  bool timings = true;
};

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | skip
  std::string expected;
  std::string actual;
  std::string reason;
  double runtime_ms = 0;
};

struct VerifyReport {
  VerifyOptions opts;
  std::vector<Rat> mu;
  int mu_attempts = 0;
  std::string timestamp;
  std::vector<CheckResult> checks;
  int passed = 0, failed = 0, skipped = 0;
  std::string verdict;  // pass | fail
};

// "rho", "random" (seeded integer weights resampled until regular, attempts
// reported), or explicit values checked for regularity.
std::pair<std::vector<Rat>, int> resolve_mu(const RootSystem& rs, const std::string& mode,
                                            const std::vector<Rat>& explicit_mu,
                                            std::uint64_t seed);

VerifyReport run_verify(const VerifyOptions& opts);

std::string report_json(const VerifyReport& r);

}  // namespace ceppa
