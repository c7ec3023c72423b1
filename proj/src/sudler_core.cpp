#include "sudler/sudler_core.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "sudler/error.hpp"

namespace sudler {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr unsigned kSineGuard = 8;
constexpr unsigned kProductGuard = 32;
// Per-factor log error in MPFR mode: a handful of roundings at bits + 8.
constexpr unsigned kFactorErrShift = 5;

[[noreturn]] void throw_zero_factor(std::uint64_t r) {
  throw Error(ErrorCode::zero_factor,
              "factor r = " + std::to_string(r) +
                  " is exactly zero (rational alpha at working precision)");
}

// Exponent of the last significant bit of x, or nullopt for zero.
std::optional<long> grid_exponent(const Real& x) {
  if (x.is_zero()) return std::nullopt;
  return static_cast<long>(mpfr_get_exp(x.get())) - static_cast<long>(x.precision());
}

// round(frac(x) * 2^128) mod 2^128.
u128 to_fixed128(const Real& x) {
  Real f = frac(x);
  Real scaled(f.precision() + 130);
  mpfr_mul_2ui(scaled.get(), f.get(), 128, MPFR_RNDN);
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), scaled.get(), MPFR_RNDN);
  BigInt low = z & BigInt("18446744073709551615");
  BigInt high = (z >> 64) & BigInt("18446744073709551615");
  const u128 lo = static_cast<u128>(mpz_get_ui(low.get_mpz_t()));
  const u128 hi = static_cast<u128>(mpz_get_ui(high.get_mpz_t()));
  return (hi << 64) | lo;  // z == 2^128 wraps to 0
}

}  // namespace

SudlerValue operator*(const SudlerValue& a, const SudlerValue& b) {
  return SudlerValue{a.log_value + b.log_value, a.value * b.value, a.n_terms + b.n_terms,
                     a.err_bound + b.err_bound};
}

// --- MPFR backend ---------------------------------------------------------------

struct Stream::Precise {
  Real phase;
  Real step;
  Real pi;
  Real factor;
  Real product;
  std::uint64_t n = 0;

  Precise(const Real& alpha, const Real* eps, unsigned bits)
      : pi(const_pi(bits + kSineGuard)), factor(bits + kSineGuard), product(1, bits + kProductGuard) {
    // Wide enough that every partial sum r*alpha + eps mod 1 is exact.
    long lowest = grid_exponent(alpha).value_or(0);
    if (eps != nullptr) {
      if (auto e = grid_exponent(*eps)) lowest = std::min(lowest, std::max(*e, lowest - 64));
    }
    const auto phase_bits = static_cast<unsigned>(std::max<long>(bits, 2 - lowest));
    step = frac(alpha).rounded(phase_bits);
    phase = eps != nullptr ? frac(eps->rounded(phase_bits + 64)).rounded(phase_bits)
                           : Real(phase_bits);
  }

  void advance() {
    mpfr_add(phase.get(), phase.get(), step.get(), MPFR_RNDN);
    if (mpfr_cmp_ui(phase.get(), 1) >= 0) mpfr_sub_ui(phase.get(), phase.get(), 1, MPFR_RNDN);
    ++n;
    if (phase.is_zero()) throw_zero_factor(n);
    if (mpfr_cmp_d(phase.get(), 0.5) <= 0) {
      mpfr_set(factor.get(), phase.get(), MPFR_RNDN);
    } else {
      mpfr_ui_sub(factor.get(), 1, phase.get(), MPFR_RNDN);
    }
    mpfr_mul(factor.get(), factor.get(), pi.get(), MPFR_RNDN);
    mpfr_sin(factor.get(), factor.get(), MPFR_RNDN);
    mpfr_mul_2ui(factor.get(), factor.get(), 1, MPFR_RNDN);
    mpfr_mul(product.get(), product.get(), factor.get(), MPFR_RNDN);
  }

  SudlerValue value(unsigned bits) const {
    SudlerValue v{Real(bits), product.rounded(bits), n, Real(bits + 8)};
    if (n > 0) mpfr_log(v.log_value.get(), product.get(), MPFR_RNDN);
    // n * 2^-(bits+5) for the factors, half an ulp for the final logarithm.
    mpfr_set_ui(v.err_bound.get(), 1, MPFR_RNDU);
    mpfr_mul_2si(v.err_bound.get(), v.err_bound.get(), -static_cast<long>(bits + kFactorErrShift), MPFR_RNDU);
    mpfr_mul_ui(v.err_bound.get(), v.err_bound.get(), static_cast<unsigned long>(n), MPFR_RNDU);
    Real log_ulp = abs(v.log_value);
    mpfr_mul_2si(log_ulp.get(), log_ulp.get(), -static_cast<long>(bits), MPFR_RNDU);
    mpfr_add(v.err_bound.get(), v.err_bound.get(), log_ulp.get(), MPFR_RNDU);
    v.err_bound = v.err_bound.rounded(bits);
    return v;
  }
};

// --- IEEE double backend ------------------------------------------------------------

struct Stream::Fast {
  u128 phase = 0;
  u128 step = 0;
  double sum = 0.0;
  double comp = 0.0;
  double err = 0.0;
  std::uint64_t n = 0;

  void advance() {
    phase += step;
    ++n;
    if (phase == 0) throw_zero_factor(n);
    const u128 folded = (phase >> 127) != 0 ? u128(0) - phase : phase;
    const double x = std::ldexp(static_cast<double>(folded), -128);
    const double lf = std::log(2.0 * std::sin(std::numbers::pi * x));
    const double t = sum + lf;
    comp += std::fabs(sum) >= std::fabs(lf) ? (sum - t) + lf : (lf - t) + sum;
    sum = t;
    err += (4.0 + std::fabs(lf)) * 0x1p-53;
  }

  double log_value() const noexcept { return sum + comp; }

  SudlerValue value() const {
    const double lv = log_value();
    const double eb = err + std::fabs(lv) * 0x1p-53;
    return SudlerValue{Real(lv, kFastBits), Real(std::exp(lv), kFastBits), n, Real(eb, kFastBits)};
  }
};

// --- Stream -----------------------------------------------------------------------

Stream::Stream(const Real& alpha, const PrecisionConfig& cfg) : cfg_(cfg) {
  if (!alpha.is_finite()) throw Error(ErrorCode::invalid_argument, "alpha must be finite");
  if (cfg.fast_path()) {
    fast_ = std::make_unique<Fast>();
    fast_->step = to_fixed128(alpha);
  } else {
    precise_ = std::make_unique<Precise>(alpha, nullptr, cfg.bits);
  }
}

Stream::Stream(const Real& alpha, const Real& eps, const PrecisionConfig& cfg) : cfg_(cfg) {
  if (!alpha.is_finite() || !eps.is_finite()) {
    throw Error(ErrorCode::invalid_argument, "alpha and eps must be finite");
  }
  if (cfg.fast_path()) {
    fast_ = std::make_unique<Fast>();
    fast_->step = to_fixed128(alpha);
    fast_->phase = to_fixed128(eps);
  } else {
    precise_ = std::make_unique<Precise>(alpha, &eps, cfg.bits);
  }
}

Stream::~Stream() = default;
Stream::Stream(Stream&&) noexcept = default;
Stream& Stream::operator=(Stream&&) noexcept = default;

void Stream::advance() {
  if (fast_) {
    fast_->advance();
  } else {
    precise_->advance();
  }
}

void Stream::advance(std::uint64_t steps) {
  for (std::uint64_t i = 0; i < steps; ++i) advance();
}

std::uint64_t Stream::terms() const noexcept { return fast_ ? fast_->n : precise_->n; }

const PrecisionConfig& Stream::config() const noexcept { return cfg_; }

bool Stream::fast() const noexcept { return static_cast<bool>(fast_); }

SudlerValue Stream::value() const {
  return fast_ ? fast_->value() : precise_->value(cfg_.bits);
}

double Stream::log_approx() const noexcept {
  if (fast_) return fast_->log_value();
  long exponent = 0;
  const double mant = mpfr_get_d_2exp(&exponent, precise_->product.get(), MPFR_RNDN);
  return std::log(mant) + static_cast<double>(exponent) * std::numbers::ln2;
}

const Real& Stream::linear() const {
  if (!precise_) throw Error(ErrorCode::invalid_argument, "linear(): not available on the fast path");
  return precise_->product;
}

SudlerValue eval_direct(const Real& alpha, std::uint64_t n, const PrecisionConfig& cfg) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "eval_direct: N must be >= 1");
  Stream s(alpha, cfg);
  s.advance(n);
  return s.value();
}

SudlerValue eval_shifted(const Real& alpha, std::uint64_t n, const Real& eps,
                         const PrecisionConfig& cfg) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "eval_shifted: N must be >= 1");
  Stream s(alpha, eps, cfg);
  s.advance(n);
  return s.value();
}

}  // namespace sudler
