#pragma once

// Text + CSV reports behind the `limit` and `verify` commands.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sudler/harness.hpp"
#include "sudler/mp_scalar.hpp"

namespace sudler {

struct Check {
  std::string suite;
  std::string name;
  std::string value;
  std::string bound;
  bool passed = false;
};

struct Report {
  std::string text;
  std::string csv;
  bool passed = true;
  std::vector<Check> checks;

  void add(Check c);
  void note(std::string_view line);
  void append(const Report& other);
};

struct VerifyOptions {
  PrecisionConfig cfg;
  std::uint64_t seed = kDefaultSeed;
  /// Upper block index; 0 picks the suite default (28 for the decomposition,
  /// 24 for conjectures and thresholds).
  unsigned max_index = 0;
  /// Shifts per block index; 0 picks the suite default.
  std::uint64_t samples = 0;
  /// Upper end of the minimum scan in the conjecture suite.
  std::uint64_t scan_to = 1'000'000;
};

/// decomposition | asymptotics | conjectures | thresholds | all
Report run_suite(std::string_view suite, const VerifyOptions& opt);
bool is_suite(std::string_view suite) noexcept;

Report limit_report(unsigned n_max, const PrecisionConfig& cfg);

}  // namespace sudler
