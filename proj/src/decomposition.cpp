#include "sudler/decomposition.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sudler/error.hpp"
#include "sudler/numtheory.hpp"
#include "sudler/sudler_core.hpp"

namespace sudler {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

namespace {

constexpr unsigned kGuard = 16;
constexpr unsigned kMaxKernelIndex = kMaxFibIndexU64;

// 2 sin(pi x) for x in (0, 1) using caller-owned scratch; result in `out`.
void two_sin_pi_unit(mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr pi) {
  if (mpfr_cmp_d(x, 0.5) <= 0) {
    mpfr_set(out, x, MPFR_RNDN);
  } else {
    mpfr_ui_sub(out, 1, x, MPFR_RNDN);
  }
  mpfr_mul(out, out, pi, MPFR_RNDN);
  mpfr_sin(out, out, MPFR_RNDN);
  mpfr_mul_2ui(out, out, 1, MPFR_RNDN);
}

}  // namespace

BlockKernel::BlockKernel(unsigned n, const PrecisionConfig& cfg)
    : n_(n), cfg_(cfg), work_bits_(0), fn_(0), fn1_(0) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "block index n must be >= 2");
  if (n > kMaxKernelIndex) {
    throw Error(ErrorCode::out_of_range, "block index n = " + std::to_string(n) + " exceeds 92");
  }
  fn_ = fib_u64(n);
  fn1_ = fib_u64(n - 1);
  work_bits_ = cfg.bits + kGuard + ceil_log2(fn_);
  neg_phi_n_ = sudler::neg_phi_pow(n, PrecisionConfig(work_bits_));
  phi_n_ = abs(neg_phi_n_);
}

Real BlockKernel::s(std::uint64_t t) const {
  if (t >= fn_) throw Error(ErrorCode::out_of_range, "s_nt: t must lie in [0, F_n)");
  // x(F_n - t) = 1 - x(t), so fold onto the half where x is small and
  // s_{nt} = s_{n(F_n - t)} holds bit for bit.
  if (t != 0 && fn_ - t < t) t = fn_ - t;
  const auto r = static_cast<std::uint64_t>(
      (static_cast<u128>(t) * fn1_) % fn_);
  // x = (t - phi^n (r - F_n / 2)) / F_n
  Real x(work_bits_);
  Real tmp(work_bits_);
  mpfr_set_ui(tmp.get(), r, MPFR_RNDN);
  mpfr_mul_2ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
  mpfr_sub_ui(tmp.get(), tmp.get(), fn_, MPFR_RNDN);
  mpfr_div_2ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
  mpfr_mul(tmp.get(), tmp.get(), phi_n_.get(), MPFR_RNDN);
  mpfr_ui_sub(x.get(), t, tmp.get(), MPFR_RNDN);
  mpfr_div_ui(x.get(), x.get(), fn_, MPFR_RNDN);
  return two_sin_pi(x, PrecisionConfig(work_bits_));
}

Real BlockKernel::v(const Real& eps) const {
  Real arg = neg_phi_n_;
  mpfr_div_2ui(arg.get(), arg.get(), 1, MPFR_RNDN);
  arg -= eps;
  return two_sin_pi(arg, PrecisionConfig(work_bits_));
}

Real BlockKernel::A() const {
  Real a = abs(two_sin_pi(phi_n_, PrecisionConfig(work_bits_)));
  mpfr_mul_ui(a.get(), a.get(), fn_, MPFR_RNDN);
  return a.rounded(cfg_.bits);
}

Real BlockKernel::A_bar(const Real& eps) const {
  Real a = abs(two_sin_pi(neg_phi_n_ - eps, PrecisionConfig(work_bits_)));
  mpfr_mul_ui(a.get(), a.get(), fn_, MPFR_RNDN);
  return a.rounded(cfg_.bits);
}

Real BlockKernel::B() const {
  if (b_) return *b_;
  const unsigned wb = work_bits_;
  const Real pi = const_pi(wb);
  Real product(1, wb + 32);
  Real x(wb), num(wb), den(wb), tmp(wb);
  std::uint64_t r = 0;  // t * F_{n-1} mod F_n, updated incrementally
  for (std::uint64_t t = 1; t < fn_; ++t) {
    r += fn1_;
    if (r >= fn_) r -= fn_;
    // numerator s_{nt}
    mpfr_set_ui(tmp.get(), r, MPFR_RNDN);
    mpfr_mul_2ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
    mpfr_sub_ui(tmp.get(), tmp.get(), fn_, MPFR_RNDN);
    mpfr_div_2ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
    mpfr_mul(tmp.get(), tmp.get(), phi_n_.get(), MPFR_RNDN);
    mpfr_ui_sub(x.get(), t, tmp.get(), MPFR_RNDN);
    mpfr_div_ui(x.get(), x.get(), fn_, MPFR_RNDN);
    two_sin_pi_unit(num.get(), x.get(), pi.get());
    // denominator 2 sin(pi t / F_n)
    mpfr_set_ui(x.get(), t, MPFR_RNDN);
    mpfr_div_ui(x.get(), x.get(), fn_, MPFR_RNDN);
    two_sin_pi_unit(den.get(), x.get(), pi.get());
    mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDN);
    mpfr_mul(product.get(), product.get(), num.get(), MPFR_RNDN);
  }
  mpfr_abs(product.get(), product.get(), MPFR_RNDN);
  b_ = product.rounded(cfg_.bits);
  return *b_;
}

void BlockKernel::fill_table() const {
  if (!s2_.empty() || !s2_fast_.empty()) return;
  const std::uint64_t half = fn_ / 2;
  if (cfg_.fast_path()) {
    s2_fast_.reserve(half);
    for (std::uint64_t t = 1; t <= half; ++t) {
      const double sv = s(t).to_double();
      s2_fast_.push_back(sv * sv);
    }
  } else {
    s2_.reserve(half);
    for (std::uint64_t t = 1; t <= half; ++t) {
      Real sv = s(t);
      mpfr_sqr(sv.get(), sv.get(), MPFR_RNDN);
      s2_.push_back(std::move(sv));
    }
  }
}

Real BlockKernel::c_product(const Real& w) const {
  fill_table();
  const std::uint64_t full = (fn_ - 1) / 2;  // weight-1 factors
  const bool half_term = fn_ % 2 == 0;     // t = F_n / 2 enters with exponent 1/2
  auto fail = [&](std::uint64_t t) {
    throw Error(ErrorCode::non_positive_factor,
                "C factor at t = " + std::to_string(t) + " is not positive (n = " + std::to_string(n_) + ")");
  };
  if (cfg_.fast_path()) {
    const double w2 = w.to_double() * w.to_double();
    double sum = 0.0;
    for (std::uint64_t t = 1; t <= full; ++t) {
      const double f = 1.0 - w2 / s2_fast_[t - 1];
      if (!(f > 0.0)) fail(t);
      sum += std::log(f);
    }
    if (half_term) {
      const double f = 1.0 - w2 / s2_fast_[fn_ / 2 - 1];
      if (!(f > 0.0)) fail(fn_ / 2);
      sum += 0.5 * std::log(f);
    }
    return Real(std::exp(sum), kFastBits);
  }
  const unsigned wb = work_bits_;
  Real w2(wb);
  mpfr_sqr(w2.get(), w.get(), MPFR_RNDN);
  Real product(1, wb + 32);
  Real f(wb);
  for (std::uint64_t t = 1; t <= full; ++t) {
    mpfr_div(f.get(), w2.get(), s2_[t - 1].get(), MPFR_RNDN);
    mpfr_ui_sub(f.get(), 1, f.get(), MPFR_RNDN);
    if (mpfr_sgn(f.get()) <= 0) fail(t);
    mpfr_mul(product.get(), product.get(), f.get(), MPFR_RNDN);
  }
  if (half_term) {
    mpfr_div(f.get(), w2.get(), s2_[fn_ / 2 - 1].get(), MPFR_RNDN);
    mpfr_ui_sub(f.get(), 1, f.get(), MPFR_RNDN);
    if (mpfr_sgn(f.get()) <= 0) fail(fn_ / 2);
    mpfr_sqrt(f.get(), f.get(), MPFR_RNDN);
    mpfr_mul(product.get(), product.get(), f.get(), MPFR_RNDN);
  }
  return product.rounded(cfg_.bits);
}

void BlockKernel::check_admissible(const Real& eps) const {
  // |eps| <= phi^(n+1), with a few ulps of slack for eps computed from tails.
  Real bound = phi_n_ * const_phi(PrecisionConfig(work_bits_));
  Real slack(bound);
  mpfr_mul_2si(slack.get(), slack.get(), -static_cast<long>(cfg_.bits) + 8, MPFR_RNDN);
  bound += slack;
  if (abs(eps) > bound) {
    throw Error(ErrorCode::out_of_range,
                "|eps| = " + abs(eps).to_string(10) + " exceeds phi^(n+1) = " + bound.to_string(10));
  }
}

Real BlockKernel::C() const { return c_product(s(0)); }

Real BlockKernel::C_bar(const Real& eps) const {
  check_admissible(eps);
  return c_product(v(eps));
}

DecompositionResult BlockKernel::verify(const Real& eps) const {
  DecompositionResult out;
  out.n = n_;
  out.eps = eps;
  const bool shifted = !eps.is_zero();
  out.A = shifted ? A_bar(eps) : A();
  out.B = B();
  out.C = shifted ? C_bar(eps) : C();
  const unsigned wb = cfg_.bits + kGuard;
  out.recombined = (out.A.rounded(wb) * out.B * out.C).rounded(cfg_.bits);
  const Real phi = const_phi(cfg_);
  out.direct = eval_shifted(phi, fn_, eps, cfg_).value;
  Real ratio = out.recombined.rounded(wb) / out.direct;
  mpfr_sub_ui(ratio.get(), ratio.get(), 1, MPFR_RNDN);
  out.residual = abs(ratio).rounded(cfg_.bits);
  return out;
}

Real s_nt(unsigned n, std::uint64_t t, const PrecisionConfig& cfg) {
  return BlockKernel(n, cfg).s(t).rounded(cfg.bits);
}

Real v_n(unsigned n, const Real& eps, const PrecisionConfig& cfg) {
  return BlockKernel(n, cfg).v(eps).rounded(cfg.bits);
}

Real A_n(unsigned n, const PrecisionConfig& cfg) { return BlockKernel(n, cfg).A(); }

Real A_bar(unsigned n, const Real& eps, const PrecisionConfig& cfg) {
  return BlockKernel(n, cfg).A_bar(eps);
}

Real B_n(unsigned n, const PrecisionConfig& cfg) { return BlockKernel(n, cfg).B(); }

Real C_n(unsigned n, const PrecisionConfig& cfg) { return BlockKernel(n, cfg).C(); }

Real C_bar(unsigned n, const Real& eps, const PrecisionConfig& cfg) {
  return BlockKernel(n, cfg).C_bar(eps);
}

DecompositionResult verify_identity(unsigned n, const Real& eps, const PrecisionConfig& cfg) {
  return BlockKernel(n, cfg).verify(eps);
}

Real sine_product_rational(std::uint64_t p, std::uint64_t q, const PrecisionConfig& cfg) {
  if (p == 0 || q == 0) throw Error(ErrorCode::invalid_argument, "p and q must be positive");
  if (std::gcd(p, q) != 1) {
    throw Error(ErrorCode::not_coprime,
                "gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  }
  const unsigned wb = cfg.bits + kGuard;
  const Real pi = const_pi(wb);
  Real product(1, wb + 32);
  Real x(wb), f(wb);
  for (std::uint64_t r = 1; r < q; ++r) {
    const auto k = static_cast<std::uint64_t>((static_cast<u128>(r) * p) % q);
    mpfr_set_ui(x.get(), k, MPFR_RNDN);
    mpfr_div_ui(x.get(), x.get(), q, MPFR_RNDN);
    two_sin_pi_unit(f.get(), x.get(), pi.get());
    mpfr_mul(product.get(), product.get(), f.get(), MPFR_RNDN);
  }
  return product.rounded(cfg.bits);
}

}  // namespace sudler
