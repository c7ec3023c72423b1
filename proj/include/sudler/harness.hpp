#pragma once

// Experiments on P_N(phi): blockwise evaluation along the Zeckendorf split,
// long scans with running extrema, the local envelope check on Fibonacci
// intervals, sampled shifted blocks, and the contrast with a continued
// fraction that has one huge partial quotient.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sudler/mp_scalar.hpp"
#include "sudler/sudler_core.hpp"

namespace sudler {

/// golden | dec:<decimal> | cf:<a1,a2,...>  (a cf prefix is followed by an
/// all-ones tail). The result lies in (0, 1); Error(invalid_argument) otherwise.
Real parse_alpha(std::string_view spec, const PrecisionConfig& cfg);

/// P_N(phi) as the product over the Zeckendorf blocks of N of the shifted
/// products P_{F_{n_j}}(phi, eps_j).
SudlerValue blockwise_eval(std::uint64_t n, const PrecisionConfig& cfg);

/// Memo of shifted blocks keyed by (n_j, n_{j+1}, ..., n_m): the block value
/// depends only on its index and the indices above it, so many N share blocks.
class BlockCache {
 public:
  explicit BlockCache(const PrecisionConfig& cfg) : cfg_(cfg) {}
  const PrecisionConfig& config() const noexcept { return cfg_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  std::uint64_t hits() const noexcept { return hits_; }

 private:
  friend SudlerValue blockwise_eval(std::uint64_t n, BlockCache& cache);
  PrecisionConfig cfg_;
  std::map<std::vector<unsigned>, SudlerValue> blocks_;
  std::uint64_t hits_ = 0;
};

SudlerValue blockwise_eval(std::uint64_t n, BlockCache& cache);

struct ScanRecord {
  std::uint64_t N = 0;
  Real logP;
  Real P;
  unsigned m = 0;  // Zeckendorf length of N
  bool is_min = false;
  bool is_max = false;
};

/// Writes `N,logP,P,m_zeck,is_min,is_max` rows.
class CsvSink {
 public:
  CsvSink(std::ostream& out, unsigned bits);

  static constexpr std::string_view kHeader = "N,logP,P,m_zeck,is_min,is_max";
  /// 17 significant digits at 53 bits, 36 at 128 bits.
  static unsigned digits_for(unsigned bits) noexcept;

  void write(const ScanRecord& rec);

 private:
  std::ostream& out_;
  unsigned digits_;
};

struct ScanOptions {
  /// Re-evaluate every new running minimum at recheck_bits when the scan runs
  /// on the fast path.
  bool recheck = true;
  unsigned recheck_bits = kDefaultBits;
  /// Called once per N in increasing order; records are only materialised
  /// when a consumer is present.
  std::function<void(const ScanRecord&)> on_record;
  CsvSink* csv = nullptr;
};

struct Recheck {
  std::uint64_t N = 0;
  double fast_log = 0.0;
  Real precise_log;
};

struct GrowthFit {
  double C1_hat = 0.0;  // min log P_N / log N over N >= 2
  double C2_hat = 0.0;  // max
  std::uint64_t argmin_N = 0;
  std::uint64_t argmax_N = 0;
};

struct ScanSummary {
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  bool fast = false;
  std::uint64_t min_N = 0;
  Real min_log;
  Real min_P;
  std::uint64_t max_N = 0;
  Real max_log;
  Real max_P;
  std::optional<GrowthFit> growth;  // present when the scan covers some N >= 2
  std::vector<Recheck> rechecks;
  double max_recheck_diff = 0.0;    // largest |fast - precise| in log P
  bool min_confirmed = true;        // precise rechecks preserved the ordering
};

/// P_N(alpha) for from <= N <= to from one stream. Running extrema are kept in
/// log space and ties go to the smaller N. Propagates Error(zero_factor).
ScanSummary scan(const Real& alpha, std::uint64_t from, std::uint64_t to,
                 const PrecisionConfig& cfg, const ScanOptions& options = {});

/// Raw extremal exponents of a record set (N >= 2 only).
GrowthFit growth_fit(std::span<const ScanRecord> records);

struct EnvelopeRow {
  unsigned n = 0;
  std::uint64_t lo = 0;  // F_{n-1}
  std::uint64_t hi = 0;  // F_n - 1
  std::uint64_t min_N = 0;
  Real min_P;
  std::uint64_t max_N = 0;
  Real max_P;
  bool min_holds = false;  // min attained at lo
  bool max_holds = false;  // max attained at hi
  bool holds() const noexcept { return min_holds && max_holds; }
};

/// For n = 3 .. n_max (<= 28) checks P_{F_{n-1}} <= P_N <= P_{F_n - 1} over
/// F_{n-1} <= N < F_n.
std::vector<EnvelopeRow> conjecture_envelope(unsigned n_max, const PrecisionConfig& cfg);

struct ThresholdRow {
  unsigned n = 0;
  std::uint64_t samples = 0;
  double min_block = 0.0;   // smallest sampled P_{F_n}(phi, eps)
  double max_block = 0.0;
  double unshifted = 0.0;   // P_{F_n}(phi)
  std::optional<double> min_ratio;  // min Abar Cbar / (A C), n >= 10 only
};

struct ThresholdReport {
  std::vector<ThresholdRow> rows;
  std::uint64_t seed = 0;
  /// Smallest n with every sampled block >= 1 from there up to n_max.
  std::optional<unsigned> n_star;
  double K1_hat = 0.0;  // min(1, smallest block)
  double K2_hat = 0.0;  // max(1, largest block)
  double raw_min = 0.0;
  double raw_max = 0.0;
  std::optional<unsigned> J_hat;  // ceil(n_star / 2)
  /// First n from which P_{F_n}(phi) >= 12/5 holds through n_max.
  std::optional<unsigned> n_twelve_fifths;
  std::optional<double> min_ratio;  // over all n >= 10
};

inline constexpr std::uint64_t kDefaultSeed = 12345;

/// Samples shifts eps = -sum (-phi)^{n_s} from random admissible tails after
/// each block n = 2 .. n_max (<= 26), together with eps = 0 and the two
/// extreme tails. Blocks are evaluated on cfg; the C-ratio for n >= 10 comes
/// from the block kernel at the same precision.
ThresholdReport threshold_scan(unsigned n_max, std::uint64_t samples_per_n, std::uint64_t seed,
                               const PrecisionConfig& cfg);

/// Admissible tails used by threshold_scan: strictly increasing indices, the
/// first >= n + 2, gaps >= 2. Exposed for tests.
std::vector<std::vector<unsigned>> sample_tails(unsigned n, std::uint64_t count, std::uint64_t seed);

struct ContrastResult {
  std::vector<std::uint64_t> prefix;
  std::uint64_t limit = 0;
  std::uint64_t min_N = 0;
  Real min_P;
  std::uint64_t dip_quotient_index = 0;  // k with a_k the largest quotient (1-based)
};

/// Minimum of P_N over N <= limit for alpha = [0; prefix, 1, 1, ...]. With
/// limit == 0 the scan runs to q_{k+1}, k being the position of the largest
/// partial quotient.
ContrastResult lubinsky_contrast(std::span<const std::uint64_t> prefix, const PrecisionConfig& cfg,
                                 std::uint64_t limit = 0);

}  // namespace sudler
