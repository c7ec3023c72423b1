#include "sudler/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "sudler/decomposition.hpp"
#include "sudler/error.hpp"
#include "sudler/numtheory.hpp"

namespace sudler {

namespace {

constexpr unsigned kExtremeTailLength = 40;
constexpr unsigned kMaxRandomTailLength = 40;

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::invalid_argument, "not a non-negative integer: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::uint64_t> parse_quotients(std::string_view list) {
  std::vector<std::uint64_t> out;
  while (true) {
    const auto comma = list.find(',');
    const std::uint64_t a = parse_u64(list.substr(0, comma));
    if (a == 0) throw Error(ErrorCode::invalid_argument, "partial quotients must be >= 1");
    out.push_back(a);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return out;
}

std::uint64_t to_u64(const BigInt& z) {
  if (!z.fits_ulong_p()) throw Error(ErrorCode::out_of_range, "value does not fit in 64 bits");
  return z.get_ui();
}

Real real_from_log(double lp, unsigned bits) { return Real(std::exp(lp), bits); }

}  // namespace

Real parse_alpha(std::string_view spec, const PrecisionConfig& cfg) {
  Real alpha(cfg.bits);
  if (spec == "golden") {
    alpha = const_phi(cfg);
  } else if (spec.starts_with("dec:")) {
    alpha = Real::parse(spec.substr(4), cfg.bits);
  } else if (spec.starts_with("cf:")) {
    const auto q = parse_quotients(spec.substr(3));
    alpha = alpha_from_cf_prefix(q, cfg);
  } else {
    throw Error(ErrorCode::invalid_argument,
                "alpha must be 'golden', 'dec:<decimal>' or 'cf:<a1,a2,...>', got '" + std::string(spec) + "'");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  }
  return alpha;
}

namespace {

// Shifted blocks are evaluated from a 128-bit (or wider) phi and eps even on
// the fast path: the fast stream keeps a 128-bit phase, and a phi rounded to
// 53 bits would shift small factors by r * 2^-53.
PrecisionConfig seed_config(const PrecisionConfig& cfg) {
  return PrecisionConfig(std::max(cfg.bits, kDefaultBits));
}

}  // namespace

SudlerValue blockwise_eval(std::uint64_t n, const PrecisionConfig& cfg) {
  BlockCache cache(cfg);
  return blockwise_eval(n, cache);
}

SudlerValue blockwise_eval(std::uint64_t n, BlockCache& cache) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "blockwise_eval: N must be >= 1");
  const PrecisionConfig& cfg = cache.cfg_;
  const PrecisionConfig seed = seed_config(cfg);
  const Zeckendorf z = zeckendorf(n);
  const auto idx = z.indices();
  std::optional<ShiftCoefficients> sc;
  std::optional<Real> phi;
  std::optional<SudlerValue> acc;
  for (std::size_t j = 0; j < z.size(); ++j) {
    std::vector<unsigned> key(idx.begin() + static_cast<std::ptrdiff_t>(j), idx.end());
    auto it = cache.blocks_.find(key);
    if (it != cache.blocks_.end()) {
      ++cache.hits_;
    } else {
      if (!sc) {
        sc = shift_coefficients(z, seed);
        phi = const_phi(seed);
      }
      it = cache.blocks_.emplace(std::move(key), eval_shifted(*phi, fib_u64(z[j]), sc->eps[j], cfg)).first;
    }
    acc = acc ? *acc * it->second : it->second;
  }
  return *acc;
}

// --- CSV ------------------------------------------------------------------------

CsvSink::CsvSink(std::ostream& out, unsigned bits) : out_(out), digits_(digits_for(bits)) {
  out_ << kHeader << '\n';
}

unsigned CsvSink::digits_for(unsigned bits) noexcept {
  const auto d = static_cast<unsigned>(std::floor(bits * std::log10(2.0))) - 2;
  return std::max(17u, d);
}

void CsvSink::write(const ScanRecord& rec) {
  out_ << rec.N << ',' << rec.logP.to_string(static_cast<int>(digits_)) << ','
       << rec.P.to_string(static_cast<int>(digits_)) << ',' << rec.m << ',' << (rec.is_min ? 1 : 0)
       << ',' << (rec.is_max ? 1 : 0) << '\n';
  if (!out_) throw Error(ErrorCode::io, "failed writing CSV row");
}

// --- scans ----------------------------------------------------------------------

ScanSummary scan(const Real& alpha, std::uint64_t from, std::uint64_t to, const PrecisionConfig& cfg,
                 const ScanOptions& options) {
  if (from < 1 || from > to) throw Error(ErrorCode::invalid_argument, "scan: need 1 <= from <= to");
  Stream stream(alpha, cfg);
  stream.advance(from - 1);

  const bool recheck = stream.fast() && options.recheck;
  const PrecisionConfig precise_cfg(std::max(options.recheck_bits, kDefaultBits));
  std::optional<Stream> precise;
  if (recheck) precise.emplace(alpha, precise_cfg);

  const bool emit = static_cast<bool>(options.on_record) || options.csv != nullptr;

  ScanSummary out;
  out.from = from;
  out.to = to;
  out.fast = stream.fast();
  double min_lp = 0.0, max_lp = 0.0;
  GrowthFit growth{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0, 0};
  bool have_growth = false;

  for (std::uint64_t N = from; N <= to; ++N) {
    stream.advance();
    const double lp = stream.log_approx();
    const bool first = N == from;
    const bool new_min = first || lp < min_lp;
    const bool new_max = first || lp > max_lp;

    std::optional<SudlerValue> snap;
    auto snapshot = [&]() -> const SudlerValue& {
      if (!snap) snap = stream.value();
      return *snap;
    };

    if (new_min) {
      min_lp = lp;
      out.min_N = N;
      if (recheck) {
        precise->advance(N - precise->terms());
        Recheck rc{N, lp, precise->value().log_value};
        out.max_recheck_diff = std::max(out.max_recheck_diff, std::fabs(rc.precise_log.to_double() - lp));
        if (!out.rechecks.empty() && !(rc.precise_log < out.rechecks.back().precise_log)) {
          out.min_confirmed = false;
        }
        out.min_log = rc.precise_log;
        out.min_P = exp(rc.precise_log);
        out.rechecks.push_back(std::move(rc));
      } else {
        out.min_log = snapshot().log_value;
        out.min_P = snapshot().value;
      }
    }
    if (new_max) {
      max_lp = lp;
      out.max_N = N;
      out.max_log = snapshot().log_value;
      out.max_P = snapshot().value;
    }
    if (N >= 2) {
      const double e = lp / std::log(static_cast<double>(N));
      if (e < growth.C1_hat) { growth.C1_hat = e; growth.argmin_N = N; }
      if (e > growth.C2_hat) { growth.C2_hat = e; growth.argmax_N = N; }
      have_growth = true;
    }
    if (emit) {
      ScanRecord rec;
      rec.N = N;
      if (stream.fast()) {
        rec.logP = Real(lp, kFastBits);
        rec.P = real_from_log(lp, kFastBits);
      } else {
        rec.logP = snapshot().log_value;
        rec.P = snapshot().value;
      }
      rec.m = zeckendorf_length(N);
      rec.is_min = new_min;
      rec.is_max = new_max;
      if (options.csv != nullptr) options.csv->write(rec);
      if (options.on_record) options.on_record(rec);
    }
  }
  if (have_growth) out.growth = growth;
  return out;
}

GrowthFit growth_fit(std::span<const ScanRecord> records) {
  GrowthFit g{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0, 0};
  bool any = false;
  for (const ScanRecord& r : records) {
    if (r.N < 2) continue;
    const double e = r.logP.to_double() / std::log(static_cast<double>(r.N));
    if (e < g.C1_hat) { g.C1_hat = e; g.argmin_N = r.N; }
    if (e > g.C2_hat) { g.C2_hat = e; g.argmax_N = r.N; }
    any = true;
  }
  if (!any) throw Error(ErrorCode::invalid_argument, "growth_fit: no record with N >= 2");
  return g;
}

// --- envelope -------------------------------------------------------------------

std::vector<EnvelopeRow> conjecture_envelope(unsigned n_max, const PrecisionConfig& cfg) {
  if (n_max < 3 || n_max > 28) throw Error(ErrorCode::invalid_argument, "conjecture_envelope: n_max must lie in [3, 28]");
  Stream stream(const_phi(cfg), cfg);
  std::vector<EnvelopeRow> rows;
  for (unsigned n = 3; n <= n_max; ++n) {
    EnvelopeRow row;
    row.n = n;
    row.lo = fib_u64(n - 1);
    row.hi = fib_u64(n) - 1;
    // F_{n-1} is the end of the previous interval (or N = 1 for n = 3).
    stream.advance(row.lo - stream.terms());
    double min_lp = stream.log_approx(), max_lp = min_lp;
    row.min_N = row.max_N = row.lo;
    row.min_P = row.max_P = stream.value().value;
    for (std::uint64_t N = row.lo + 1; N <= row.hi; ++N) {
      stream.advance();
      const double lp = stream.log_approx();
      if (lp < min_lp) {
        min_lp = lp;
        row.min_N = N;
        row.min_P = stream.value().value;
      }
      if (lp > max_lp) {
        max_lp = lp;
        row.max_N = N;
        row.max_P = stream.value().value;
      }
    }
    row.min_holds = row.min_N == row.lo;
    row.max_holds = row.max_N == row.hi;
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- thresholds -----------------------------------------------------------------

std::vector<std::vector<unsigned>> sample_tails(unsigned n, std::uint64_t count, std::uint64_t seed) {
  std::vector<std::vector<unsigned>> tails;
  tails.reserve(count + 3);
  tails.emplace_back();  // eps = 0
  std::vector<unsigned> even, odd;
  for (unsigned k = 0; k < kExtremeTailLength; ++k) {
    even.push_back(n + 2 + 2 * k);  // p -> phi
    odd.push_back(n + 3 + 2 * k);   // p -> -phi^2
  }
  tails.push_back(std::move(even));
  tails.push_back(std::move(odd));

  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (n + 1)));
  std::uniform_int_distribution<unsigned> length(0, kMaxRandomTailLength);
  std::geometric_distribution<unsigned> extra(0.5);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::vector<unsigned> tail;
    const unsigned len = length(rng);
    unsigned idx = n;
    for (unsigned k = 0; k < len; ++k) {
      idx += 2 + std::min(extra(rng), 16u);
      tail.push_back(idx);
    }
    tails.push_back(std::move(tail));
  }
  return tails;
}

ThresholdReport threshold_scan(unsigned n_max, std::uint64_t samples_per_n, std::uint64_t seed,
                               const PrecisionConfig& cfg) {
  if (n_max < 2 || n_max > 26) throw Error(ErrorCode::invalid_argument, "threshold_scan: n_max must lie in [2, 26]");
  ThresholdReport rep;
  rep.seed = seed;
  const PrecisionConfig seed_cfg = seed_config(cfg);
  const Real phi = const_phi(seed_cfg);
  rep.raw_min = std::numeric_limits<double>::infinity();
  rep.raw_max = -std::numeric_limits<double>::infinity();

  for (unsigned n = 2; n <= n_max; ++n) {
    ThresholdRow row;
    row.n = n;
    row.min_block = std::numeric_limits<double>::infinity();
    row.max_block = -std::numeric_limits<double>::infinity();
    const std::uint64_t fn = fib_u64(n);
    std::optional<BlockKernel> kernel;
    double a0 = 0.0, c0 = 0.0;
    if (n >= 10) {
      kernel.emplace(n, cfg);
      a0 = kernel->A().to_double();
      c0 = kernel->C().to_double();
    }
    for (const auto& tail : sample_tails(n, samples_per_n, seed)) {
      const Real eps = tail.empty() ? Real(seed_cfg.bits) : eps_from_tail(tail, seed_cfg);
      const double block = std::exp(eval_shifted(phi, fn, eps, cfg).log_value.to_double());
      if (tail.empty()) row.unshifted = block;
      row.min_block = std::min(row.min_block, block);
      row.max_block = std::max(row.max_block, block);
      ++row.samples;
      if (kernel) {
        const double ratio = kernel->A_bar(eps).to_double() / a0 * (kernel->C_bar(eps).to_double() / c0);
        row.min_ratio = row.min_ratio ? std::min(*row.min_ratio, ratio) : ratio;
      }
    }
    rep.raw_min = std::min(rep.raw_min, row.min_block);
    rep.raw_max = std::max(rep.raw_max, row.max_block);
    if (row.min_ratio) rep.min_ratio = rep.min_ratio ? std::min(*rep.min_ratio, *row.min_ratio) : *row.min_ratio;
    rep.rows.push_back(row);
  }

  for (auto it = rep.rows.rbegin(); it != rep.rows.rend() && it->min_block >= 1.0; ++it) rep.n_star = it->n;
  for (auto it = rep.rows.rbegin(); it != rep.rows.rend() && it->unshifted >= 2.4; ++it) rep.n_twelve_fifths = it->n;
  if (rep.n_star) rep.J_hat = (*rep.n_star + 1) / 2;
  rep.K1_hat = std::min(1.0, rep.raw_min);
  rep.K2_hat = std::max(1.0, rep.raw_max);
  return rep;
}

// --- contrast -------------------------------------------------------------------

ContrastResult lubinsky_contrast(std::span<const std::uint64_t> prefix, const PrecisionConfig& cfg,
                                 std::uint64_t limit) {
  if (prefix.empty()) throw Error(ErrorCode::invalid_argument, "lubinsky_contrast: empty prefix");
  ContrastResult res;
  res.prefix.assign(prefix.begin(), prefix.end());
  const auto big = std::max_element(prefix.begin(), prefix.end());
  res.dip_quotient_index = static_cast<std::uint64_t>(big - prefix.begin()) + 1;
  if (limit == 0) {
    std::vector<std::uint64_t> extended = res.prefix;
    extended.insert(extended.end(), {1, 1});
    const auto q = convergent_denominators(extended);
    limit = to_u64(q[res.dip_quotient_index]);  // q_{k+1}
  }
  res.limit = limit;
  const Real alpha = alpha_from_cf_prefix(prefix, seed_config(cfg));
  ScanOptions opts;
  opts.recheck = false;
  const ScanSummary s = scan(alpha, 1, limit, cfg, opts);
  res.min_N = s.min_N;
  res.min_P = s.min_P;
  return res;
}

}  // namespace sudler
