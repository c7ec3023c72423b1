#include "sudler/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sudler/error.hpp"

namespace sudler {

namespace {

// Bits lost to cancellation in F_{n-1} - F_n * phi: log2(phi^(1-2n)) < 1.39 n.
unsigned cancellation_guard(unsigned n) {
  return static_cast<unsigned>(std::ceil(1.39 * n)) + 16;
}

}  // namespace

BigInt fib(unsigned n) {
  BigInt f;
  mpz_fib_ui(f.get_mpz_t(), n);
  return f;
}

std::uint64_t fib_u64(unsigned n) {
  if (n > kMaxFibIndexU64) {
    throw Error(ErrorCode::out_of_range, "F_" + std::to_string(n) + " does not fit in 64 bits");
  }
  std::uint64_t a = 0, b = 1;
  for (unsigned i = 0; i < n; ++i) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

FibTable::FibTable(unsigned max_index) {
  values_.reserve(max_index + 1);
  values_.emplace_back(0);
  if (max_index >= 1) values_.emplace_back(1);
  for (unsigned n = 2; n <= max_index; ++n) values_.push_back(values_[n - 1] + values_[n - 2]);
}

// --- Zeckendorf ---------------------------------------------------------------

Zeckendorf::Zeckendorf(std::vector<unsigned> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw Error(ErrorCode::invalid_argument, "Zeckendorf: empty index list");
  if (indices_.front() < 2) throw Error(ErrorCode::invalid_argument, "Zeckendorf: n_1 must be >= 2");
  for (std::size_t j = 1; j < indices_.size(); ++j) {
    if (indices_[j] < indices_[j - 1] + 2) {
      throw Error(ErrorCode::invalid_argument, "Zeckendorf: indices must differ by at least 2");
    }
  }
}

BigInt Zeckendorf::value() const {
  BigInt total = 0;
  for (unsigned n : indices_) total += fib(n);
  return total;
}

std::string Zeckendorf::to_string() const {
  std::ostringstream os;
  os << value().get_str() << " =";
  for (std::size_t j = 0; j < indices_.size(); ++j) {
    os << (j == 0 ? " " : " + ") << "F_" << indices_[j];
  }
  return os.str();
}

Zeckendorf zeckendorf(const BigInt& n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "zeckendorf: N must be >= 1");
  std::vector<BigInt> table{BigInt(0), BigInt(1)};
  while (table.back() <= n) table.push_back(table[table.size() - 1] + table[table.size() - 2]);
  std::vector<unsigned> picked;
  BigInt rest = n;
  // table.back() > n, so the largest admissible index is size - 2.
  for (unsigned k = static_cast<unsigned>(table.size() - 2); k >= 2 && rest > 0; --k) {
    if (table[k] <= rest) {
      rest -= table[k];
      picked.push_back(k);
      if (k == 2) break;
      --k;  // the next index is at most k - 2
    }
  }
  std::reverse(picked.begin(), picked.end());
  return Zeckendorf(std::move(picked));
}

Zeckendorf zeckendorf(std::uint64_t n) { return zeckendorf(BigInt(std::to_string(n))); }

unsigned zeckendorf_length(std::uint64_t n) noexcept {
  static const auto table = [] {
    std::vector<std::uint64_t> t;
    for (unsigned k = 0; k <= kMaxFibIndexU64; ++k) t.push_back(fib_u64(k));
    return t;
  }();
  unsigned m = 0;
  unsigned k = kMaxFibIndexU64;
  while (n > 0) {
    while (table[k] > n) --k;
    n -= table[k];
    ++m;
  }
  return m;
}

// --- golden-ratio powers ---------------------------------------------------------

Real neg_phi_pow(unsigned n, const PrecisionConfig& cfg) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "neg_phi_pow: n must be >= 1");
  const unsigned work = cfg.bits + cancellation_guard(n);
  Real phi = const_phi(PrecisionConfig(work));
  Real r(work);
  mpfr_mul_z(r.get(), phi.get(), fib(n).get_mpz_t(), MPFR_RNDN);
  mpfr_z_sub(r.get(), fib(n - 1).get_mpz_t(), r.get(), MPFR_RNDN);
  return r.rounded(cfg.bits);
}

Real eps_from_tail(std::span<const unsigned> tail, const PrecisionConfig& cfg) {
  Real sum(cfg.bits + 16);
  for (std::size_t s = 0; s < tail.size(); ++s) {
    if (s > 0 && tail[s] < tail[s - 1] + 2) {
      throw Error(ErrorCode::invalid_argument, "eps_from_tail: tail indices need gaps >= 2");
    }
    sum -= neg_phi_pow(tail[s], PrecisionConfig(cfg.bits + 16));
  }
  return sum.rounded(cfg.bits);
}

ShiftCoefficients shift_coefficients(const Zeckendorf& z, const PrecisionConfig& cfg) {
  const auto idx = z.indices();
  const std::size_t m = idx.size();
  ShiftCoefficients out;
  out.eps.reserve(m);
  out.p.reserve(m);
  const PrecisionConfig work(cfg.bits + 16);
  for (std::size_t j = 0; j < m; ++j) {
    out.eps.push_back(eps_from_tail(idx.subspan(j + 1), cfg));
    Real p(work.bits);
    for (std::size_t s = j + 1; s < m; ++s) p += neg_phi_pow(idx[s] - idx[j], work);
    out.p.push_back(p.rounded(cfg.bits));
  }
  return out;
}

// --- continued fractions ------------------------------------------------------------

ContinuedFraction cf_expand(const Real& alpha, unsigned depth) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "cf_expand: alpha must lie in (0, 1)");
  }
  if (depth == 0) throw Error(ErrorCode::invalid_argument, "cf_expand: depth must be >= 1");
  if (depth > alpha.precision() / 4) {
    throw Error(ErrorCode::precision_exhausted,
                "cf_expand: depth " + std::to_string(depth) + " exceeds precision/4 = " +
                    std::to_string(alpha.precision() / 4));
  }
  ContinuedFraction out;
  Real x = alpha;
  Real inv(alpha.precision());
  BigInt a;
  for (unsigned k = 0; k < depth && !x.is_zero(); ++k) {
    mpfr_ui_div(inv.get(), 1, x.get(), MPFR_RNDN);
    mpfr_get_z(a.get_mpz_t(), inv.get(), MPFR_RNDD);
    if (!a.fits_ulong_p()) {
      throw Error(ErrorCode::precision_exhausted, "cf_expand: partial quotient overflow");
    }
    out.partial_quotients.push_back(a.get_ui());
    mpfr_sub_z(x.get(), inv.get(), a.get_mpz_t(), MPFR_RNDN);
  }
  out.denominators = convergent_denominators(out.partial_quotients);
  return out;
}

std::vector<BigInt> convergent_denominators(std::span<const std::uint64_t> quotients) {
  std::vector<BigInt> q;
  BigInt prev = 0, cur = 1;
  for (std::uint64_t a : quotients) {
    BigInt next = BigInt(std::to_string(a)) * cur + prev;
    prev = cur;
    cur = next;
    q.push_back(cur);
  }
  return q;
}

Real alpha_from_cf_prefix(std::span<const std::uint64_t> prefix, const PrecisionConfig& cfg) {
  const unsigned work = cfg.bits + 32;
  Real x = const_phi(PrecisionConfig(work));
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    if (*it == 0) throw Error(ErrorCode::invalid_argument, "continued fraction quotients must be >= 1");
    mpfr_add_ui(x.get(), x.get(), static_cast<unsigned long>(*it), MPFR_RNDN);
    mpfr_ui_div(x.get(), 1, x.get(), MPFR_RNDN);
  }
  return x.rounded(cfg.bits);
}

}  // namespace sudler
