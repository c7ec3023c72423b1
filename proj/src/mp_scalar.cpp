#include "sudler/mp_scalar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "sudler/error.hpp"

namespace sudler {

namespace {

constexpr unsigned kGuardBits = 8;

mpfr_prec_t widest(const Real& a, const Real& b) {
  return std::max(mpfr_get_prec(a.get()), mpfr_get_prec(b.get()));
}

// Reduces x to r in [0, 1/2] with |sin(pi x)| = sin(pi r), returning the sign
// of sin(pi x). `r` keeps enough precision for the reduction to be exact.
int fold_half_period(const Real& x, Real& r) {
  mpfr_set_prec(r.get(), mpfr_get_prec(x.get()) + 2);
  mpfr_remainder(r.get(), x.get(), Real(2, 2).get(), MPFR_RNDN);  // [-1, 1], exact
  int sign = 1;
  if (mpfr_sgn(r.get()) < 0) {
    mpfr_neg(r.get(), r.get(), MPFR_RNDN);
    sign = -1;
  }
  if (mpfr_cmp_d(r.get(), 0.5) > 0) mpfr_ui_sub(r.get(), 1, r.get(), MPFR_RNDN);  // exact
  return sign;
}

}  // namespace

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::integer_argument: return "IntegerArgument";
    case ErrorCode::zero_factor: return "ZeroFactor";
    case ErrorCode::non_positive_factor: return "NonPositiveFactor";
    case ErrorCode::not_coprime: return "NotCoprime";
    case ErrorCode::precision_exhausted: return "PrecisionExhausted";
    case ErrorCode::tail_too_large: return "TailTooLarge";
    case ErrorCode::sum_exceeds_one: return "SumExceedsOne";
    case ErrorCode::out_of_range: return "OutOfRange";
    case ErrorCode::io: return "IoError";
  }
  return "Unknown";
}

PrecisionConfig::PrecisionConfig(unsigned b) : bits(b) {
  if (b < kFastBits) {
    throw Error(ErrorCode::invalid_argument,
                "precision must be at least 53 bits, got " + std::to_string(b));
  }
}

PrecisionConfig PrecisionConfig::for_scan(std::uint64_t n_max, unsigned base) {
  return PrecisionConfig(std::max(base, 64 + ceil_log2(std::max<std::uint64_t>(n_max, 1))));
}

unsigned ceil_log2(std::uint64_t n) noexcept {
  return n <= 1 ? 0 : static_cast<unsigned>(std::bit_width(n - 1));
}

// --- Real -------------------------------------------------------------------

Real::Real(unsigned bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(double v, unsigned bits) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(int v, unsigned bits) : Real(static_cast<long>(v), bits) {}

Real::Real(long v, unsigned bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, v, MPFR_RNDN);
}

Real::Real(const BigInt& v, unsigned bits) {
  mpfr_init2(value_, bits);
  mpfr_set_z(value_, v.get_mpz_t(), MPFR_RNDN);
}

Real Real::parse(std::string_view text, unsigned bits) {
  Real r(bits);
  std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::invalid_argument, "not a decimal number: '" + s + "'");
  }
  if (!r.is_finite()) throw Error(ErrorCode::invalid_argument, "non-finite number: '" + s + "'");
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // Steal the limbs and leave `other` as a valid 2-bit zero.
  *value_ = *other.value_;
  mpfr_init2(other.value_, 2);
  mpfr_set_zero(other.value_, 1);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

unsigned Real::precision() const noexcept {
  return static_cast<unsigned>(mpfr_get_prec(value_));
}

Real Real::rounded(unsigned bits) const {
  Real r(bits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

double Real::to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Real::to_string() const {
  return to_string(static_cast<int>(std::ceil(precision() * 0.30102999566398120)) + 1);
}

bool Real::is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
bool Real::is_integer() const noexcept { return mpfr_integer_p(value_) != 0; }
bool Real::is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
int Real::sign() const noexcept { return mpfr_sgn(value_); }

Real& Real::operator+=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real r(static_cast<unsigned>(widest(a, b)));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(static_cast<unsigned>(widest(a, b)));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(static_cast<unsigned>(widest(a, b)));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(static_cast<unsigned>(widest(a, b)));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.value_, a.value_, MPFR_RNDN);
  return r;
}

bool operator==(const Real& a, const Real& b) noexcept {
  return mpfr_equal_p(a.value_, b.value_) != 0;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const Real& a, double b) noexcept {
  return !mpfr_nan_p(a.value_) && !std::isnan(b) && mpfr_cmp_d(a.value_, b) == 0;
}

std::partial_ordering operator<=>(const Real& a, double b) noexcept {
  if (mpfr_nan_p(a.value_) || std::isnan(b)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_d(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real floor(const Real& x) {
  Real r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

Real frac(const Real& x) {
  Real r(x.precision());
  mpfr_frac(r.get(), x.get(), MPFR_RNDN);  // exact, carries the sign of x
  if (r.sign() < 0) mpfr_add_ui(r.get(), r.get(), 1, MPFR_RNDN);
  if (mpfr_cmp_ui(r.get(), 1) >= 0) mpfr_set_zero(r.get(), 1);  // -tiny + 1 rounded up
  return r;
}

Real pow(const Real& x, unsigned long k) {
  Real r(x.precision());
  mpfr_pow_ui(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }
Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }

Real const_pi(unsigned bits) {
  Real r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real const_sqrt5(unsigned bits) {
  Real r(bits);
  mpfr_sqrt_ui(r.get(), 5, MPFR_RNDN);
  return r;
}

Real const_phi(const PrecisionConfig& cfg) {
  Real s = const_sqrt5(cfg.bits + 2 * kGuardBits);
  mpfr_sub_ui(s.get(), s.get(), 1, MPFR_RNDN);
  mpfr_div_2ui(s.get(), s.get(), 1, MPFR_RNDN);
  return s.rounded(cfg.bits);
}

Real two_sin_pi(const Real& x, const PrecisionConfig& cfg) {
  if (!x.is_finite()) throw Error(ErrorCode::invalid_argument, "two_sin_pi: non-finite argument");
  Real r;
  const int sign = fold_half_period(x, r);
  Real y = r.rounded(cfg.bits + kGuardBits);
  mpfr_mul(y.get(), y.get(), const_pi(cfg.bits + kGuardBits).get(), MPFR_RNDN);
  mpfr_sin(y.get(), y.get(), MPFR_RNDN);
  mpfr_mul_2ui(y.get(), y.get(), 1, MPFR_RNDN);
  if (sign < 0) mpfr_neg(y.get(), y.get(), MPFR_RNDN);
  return y.rounded(cfg.bits);
}

Real log_abs_two_sin_pi(const Real& x, const PrecisionConfig& cfg) {
  if (!x.is_finite()) throw Error(ErrorCode::invalid_argument, "log_abs_two_sin_pi: non-finite argument");
  if (x.is_integer()) {
    throw Error(ErrorCode::integer_argument,
                "log_abs_two_sin_pi: integer argument " + x.to_string(20) + " (zero factor)");
  }
  Real r;
  fold_half_period(x, r);
  const unsigned work = cfg.bits + 2 * kGuardBits;
  Real y = r.rounded(work);
  mpfr_mul(y.get(), y.get(), const_pi(work).get(), MPFR_RNDN);
  mpfr_sin(y.get(), y.get(), MPFR_RNDN);
  mpfr_mul_2ui(y.get(), y.get(), 1, MPFR_RNDN);
  mpfr_log(y.get(), y.get(), MPFR_RNDN);
  return y.rounded(cfg.bits);
}

}  // namespace sudler
