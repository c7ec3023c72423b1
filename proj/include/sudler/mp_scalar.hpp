#pragma once

// Arbitrary-precision real numbers (an RAII wrapper over MPFR) and the two
// sine kernels every product evaluation is built from.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sudler {

using BigInt = mpz_class;

inline constexpr unsigned kDefaultBits = 128;
inline constexpr unsigned kFastBits = 53;

/// Working precision. `bits == 53` selects the IEEE-double fast path in the
/// streaming evaluators; every other value runs on MPFR.
struct PrecisionConfig {
  unsigned bits = kDefaultBits;

  /// Throws Error(invalid_argument) when bits < 53.
  explicit PrecisionConfig(unsigned b = kDefaultBits);

  bool fast_path() const noexcept { return bits == kFastBits; }

  /// Smallest precision that keeps a scan up to `n_max` inside its error
  /// budget: max(base, 64 + ceil(log2 n_max)).
  static PrecisionConfig for_scan(std::uint64_t n_max, unsigned base = kDefaultBits);

  friend bool operator==(const PrecisionConfig&, const PrecisionConfig&) = default;
};

class Real {
 public:
  explicit Real(unsigned bits = kDefaultBits);
  Real(double v, unsigned bits);
  Real(int v, unsigned bits);
  Real(long v, unsigned bits);
  Real(const BigInt& v, unsigned bits);

  /// Parses a decimal string at `bits` precision (round to nearest).
  static Real parse(std::string_view text, unsigned bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  unsigned precision() const noexcept;
  /// Copy rounded (to nearest) to `bits`.
  Real rounded(unsigned bits) const;

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }

  double to_double() const noexcept;
  /// `digits` significant decimal digits, printf %g style.
  std::string to_string(int digits) const;
  std::string to_string() const;

  bool is_zero() const noexcept;
  bool is_integer() const noexcept;
  bool is_finite() const noexcept;
  int sign() const noexcept;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend bool operator==(const Real& a, const Real& b) noexcept;
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept;
  friend bool operator==(const Real& a, double b) noexcept;
  friend std::partial_ordering operator<=>(const Real& a, double b) noexcept;

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real floor(const Real& x);
/// x - floor(x), always in [0, 1).
Real frac(const Real& x);
Real pow(const Real& x, unsigned long k);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
/// ceil(log2(n)) for n >= 1.
unsigned ceil_log2(std::uint64_t n) noexcept;

Real const_pi(unsigned bits);
Real const_sqrt5(unsigned bits);

/// (sqrt(5) - 1) / 2 correctly rounded to cfg.bits.
Real const_phi(const PrecisionConfig& cfg);

/// 2 sin(pi x). x is reduced modulo 2 at its own full precision before the
/// sine is taken, then folded onto [0, 1/2] so small results keep their
/// relative accuracy.
Real two_sin_pi(const Real& x, const PrecisionConfig& cfg);

/// ln|2 sin(pi x)|. Throws Error(integer_argument) for integer x.
Real log_abs_two_sin_pi(const Real& x, const PrecisionConfig& cfg);

}  // namespace sudler
