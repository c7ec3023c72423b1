#include "sudler/asymptotics.hpp"

#include <string>

#include "sudler/decomposition.hpp"
#include "sudler/error.hpp"
#include "sudler/numtheory.hpp"
#include "sudler/sudler_core.hpp"

namespace sudler {

namespace {

constexpr unsigned kGuard = 32;

// Walks u_1, u_2, ... keeping t*phi mod 1 exact in a register two bits wider
// than phi itself.
class USequence {
 public:
  explicit USequence(unsigned bits)
      : phi_(const_phi(PrecisionConfig(bits))),
        phase_(bits + 2),
        two_sqrt5_(const_sqrt5(bits)),
        u_(bits) {
    mpfr_mul_2ui(two_sqrt5_.get(), two_sqrt5_.get(), 1, MPFR_RNDN);
  }

  // Advances to the next t and returns u_t.
  const Real& next() {
    ++t_;
    mpfr_add(phase_.get(), phase_.get(), phi_.get(), MPFR_RNDN);
    if (mpfr_cmp_ui(phase_.get(), 1) >= 0) mpfr_sub_ui(phase_.get(), phase_.get(), 1, MPFR_RNDN);
    // u_t = 2 sqrt5 t - 2 {t phi} + 1
    mpfr_mul_ui(u_.get(), two_sqrt5_.get(), t_, MPFR_RNDN);
    mpfr_sub(u_.get(), u_.get(), phase_.get(), MPFR_RNDN);
    mpfr_sub(u_.get(), u_.get(), phase_.get(), MPFR_RNDN);
    mpfr_add_ui(u_.get(), u_.get(), 1, MPFR_RNDN);
    return u_;
  }

 private:
  Real phi_;
  Real phase_;
  Real two_sqrt5_;
  Real u_;
  std::uint64_t t_ = 0;
};

// 1 / (2 sqrt5 (2 sqrt5 T - 1)), rounded up.
Real tail_bound(std::uint64_t T, unsigned bits) {
  Real s5 = const_sqrt5(bits);
  Real denom(bits);
  mpfr_mul_2ui(denom.get(), s5.get(), 1, MPFR_RNDD);
  mpfr_mul_ui(denom.get(), denom.get(), T, MPFR_RNDD);
  mpfr_sub_ui(denom.get(), denom.get(), 1, MPFR_RNDD);
  mpfr_mul(denom.get(), denom.get(), s5.get(), MPFR_RNDD);
  mpfr_mul_2ui(denom.get(), denom.get(), 1, MPFR_RNDD);
  Real out(bits);
  mpfr_ui_div(out.get(), 1, denom.get(), MPFR_RNDU);
  return out;
}

// Covers the roundings in T terms of the partial sum or product.
Real rounding_slack(std::uint64_t T, unsigned work_bits) {
  Real slack(work_bits);
  mpfr_set_ui(slack.get(), 1, MPFR_RNDU);
  mpfr_mul_ui(slack.get(), slack.get(), T + 8, MPFR_RNDU);
  mpfr_mul_2si(slack.get(), slack.get(), -static_cast<long>(work_bits) + 4, MPFR_RNDU);
  return slack;
}

Real phi_sq(unsigned bits) {
  Real r(1, bits);
  r -= const_phi(PrecisionConfig(bits));
  return r;
}

}  // namespace

Real u_t(std::uint64_t t, const PrecisionConfig& cfg) {
  if (t < 1) throw Error(ErrorCode::invalid_argument, "u_t: t must be >= 1");
  const unsigned wb = cfg.bits + 64 + ceil_log2(t);
  Real tphi = const_phi(PrecisionConfig(wb));
  mpfr_mul_ui(tphi.get(), tphi.get(), t, MPFR_RNDN);
  Real u = const_sqrt5(wb);
  mpfr_mul_ui(u.get(), u.get(), t, MPFR_RNDN);
  u -= frac(tphi);
  mpfr_add_d(u.get(), u.get(), 0.5, MPFR_RNDN);
  mpfr_mul_2ui(u.get(), u.get(), 1, MPFR_RNDN);
  return u.rounded(cfg.bits);
}

SeriesBound sum_inv_u_sq(std::uint64_t T, const PrecisionConfig& cfg) {
  if (T < 1) throw Error(ErrorCode::invalid_argument, "sum_inv_u_sq: T must be >= 1");
  const unsigned wb = cfg.bits + kGuard;
  USequence seq(wb);
  Real sum(wb), term(wb);
  for (std::uint64_t t = 1; t <= T; ++t) {
    const Real& u = seq.next();
    mpfr_sqr(term.get(), u.get(), MPFR_RNDN);
    mpfr_ui_div(term.get(), 1, term.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
  }
  SeriesBound out;
  out.T = T;
  out.partial = sum.rounded(cfg.bits);
  out.tail = tail_bound(T, cfg.bits);
  Real total(wb);
  mpfr_add(total.get(), sum.get(), out.tail.get(), MPFR_RNDU);
  mpfr_add(total.get(), total.get(), rounding_slack(T, wb).get(), MPFR_RNDU);
  out.total_upper = Real(cfg.bits);
  mpfr_set(out.total_upper.get(), total.get(), MPFR_RNDU);
  return out;
}

InfiniteProductBound perturbed_c_infinity(const Real& w, std::uint64_t T, const PrecisionConfig& cfg) {
  if (T < 1) throw Error(ErrorCode::invalid_argument, "perturbed_c_infinity: T must be >= 1");
  const unsigned wb = cfg.bits + kGuard;
  Real w2 = w.rounded(wb);
  mpfr_sqr(w2.get(), w2.get(), MPFR_RNDU);
  Real five_slack(5, wb);
  mpfr_add(five_slack.get(), five_slack.get(), rounding_slack(0, cfg.bits).get(), MPFR_RNDU);
  if (w2 > five_slack) {
    throw Error(ErrorCode::tail_too_large, "|w| = " + abs(w).to_string(12) + " exceeds sqrt(5)");
  }
  InfiniteProductBound out;
  out.T = T;
  if (w.is_zero()) {
    // every factor is exactly 1
    out.finite = out.tail_factor = out.lower = Real(1, cfg.bits);
    return out;
  }
  const Real tail = tail_bound(T, wb);
  Real tail_factor(wb);
  mpfr_mul(tail_factor.get(), w2.get(), tail.get(), MPFR_RNDU);
  if (tail_factor >= 1.0) {
    throw Error(ErrorCode::tail_too_large, "w^2 * tail >= 1; increase T");
  }
  mpfr_ui_sub(tail_factor.get(), 1, tail_factor.get(), MPFR_RNDD);

  USequence seq(wb);
  Real product(1, wb), f(wb);
  for (std::uint64_t t = 1; t <= T; ++t) {
    const Real& u = seq.next();
    mpfr_sqr(f.get(), u.get(), MPFR_RNDN);
    mpfr_div(f.get(), w2.get(), f.get(), MPFR_RNDN);
    mpfr_ui_sub(f.get(), 1, f.get(), MPFR_RNDN);
    mpfr_mul(product.get(), product.get(), f.get(), MPFR_RNDN);
  }
  // Relative rounding error of the finite product, pushed downwards.
  Real shrink(1, wb);
  mpfr_sub(shrink.get(), shrink.get(), rounding_slack(T, wb).get(), MPFR_RNDD);
  out.finite = product.rounded(cfg.bits);
  Real lower(wb);
  mpfr_mul(lower.get(), product.get(), tail_factor.get(), MPFR_RNDD);
  mpfr_mul(lower.get(), lower.get(), shrink.get(), MPFR_RNDD);
  out.tail_factor = tail_factor.rounded(cfg.bits);
  out.lower = Real(cfg.bits);
  mpfr_set(out.lower.get(), lower.get(), MPFR_RNDD);
  return out;
}

ProductBracket prod_bound_check(std::span<const Real> a, const PrecisionConfig& cfg) {
  if (a.size() < 2) throw Error(ErrorCode::invalid_argument, "prod_bound_check: need at least two terms");
  const unsigned wb = cfg.bits + kGuard;
  Real sum(wb);
  Real product(1, wb);
  for (const Real& at : a) {
    Real m = abs(at).rounded(wb);
    sum += m;
    Real f(1, wb);
    f -= m;
    product *= f;
  }
  if (sum >= 1.0) {
    throw Error(ErrorCode::sum_exceeds_one, "sum |a_t| = " + sum.to_string(12) + " is not < 1");
  }
  Real one_minus(1, wb);
  one_minus -= sum;
  ProductBracket out;
  out.lower = one_minus.rounded(cfg.bits);
  out.upper = (Real(1, wb) / one_minus).rounded(cfg.bits);
  out.product = product.rounded(cfg.bits);
  // Equality on the left only when a single term is non-zero.
  out.inside = one_minus <= product && product < Real(1, wb) / one_minus;
  return out;
}

Real ratio_A(unsigned n, const Real& eps, const PrecisionConfig& cfg) {
  const PrecisionConfig wide(cfg.bits + kGuard);
  const BlockKernel wide_kernel(n, wide);
  return (wide_kernel.A_bar(eps) / wide_kernel.A()).rounded(cfg.bits);
}

Real ratio_A_model(const Real& p) {
  Real r(1, p.precision());
  r += p;
  return r;
}

Real ratio_C_lower(const Real& p) {
  const unsigned bits = p.precision();
  const Real slack = rounding_slack(0, bits);
  const Real hi = const_phi(PrecisionConfig(bits)) + slack;
  const Real lo = -(phi_sq(bits) + slack);
  if (p < lo || p > hi) {
    throw Error(ErrorCode::out_of_range, "p = " + p.to_string(12) + " outside [-phi^2, phi]");
  }
  Real y = p.rounded(bits + 8);
  mpfr_mul_2ui(y.get(), y.get(), 1, MPFR_RNDN);
  mpfr_add_ui(y.get(), y.get(), 1, MPFR_RNDN);
  mpfr_sqr(y.get(), y.get(), MPFR_RNDN);
  mpfr_div_ui(y.get(), y.get(), 7, MPFR_RNDN);
  mpfr_ui_sub(y.get(), 1, y.get(), MPFR_RNDN);
  return y.rounded(bits);
}

Real g(const Real& x) {
  const unsigned bits = x.precision();
  Real y = x.rounded(bits + 8);
  mpfr_mul_2ui(y.get(), y.get(), 1, MPFR_RNDN);
  mpfr_add_ui(y.get(), y.get(), 1, MPFR_RNDN);
  mpfr_sqr(y.get(), y.get(), MPFR_RNDN);
  mpfr_div_ui(y.get(), y.get(), 7, MPFR_RNDN);
  mpfr_ui_sub(y.get(), 1, y.get(), MPFR_RNDN);
  Real one_plus = x.rounded(bits + 8);
  mpfr_add_ui(one_plus.get(), one_plus.get(), 1, MPFR_RNDN);
  return (one_plus * y).rounded(bits);
}

namespace {

// g'(x) = (7 - 2y - 3y^2) / 7 with y = 1 + 2x.
Real g_prime(const Real& x) {
  Real y = x;
  mpfr_mul_2ui(y.get(), y.get(), 1, MPFR_RNDN);
  mpfr_add_ui(y.get(), y.get(), 1, MPFR_RNDN);
  Real r(7, x.precision());
  Real t = y;
  mpfr_mul_2ui(t.get(), t.get(), 1, MPFR_RNDN);
  r -= t;
  mpfr_sqr(t.get(), y.get(), MPFR_RNDN);
  mpfr_mul_ui(t.get(), t.get(), 3, MPFR_RNDN);
  r -= t;
  mpfr_div_ui(r.get(), r.get(), 7, MPFR_RNDN);
  return r;
}

}  // namespace

GridMinimum g_min_on_range(std::uint64_t grid_points, const PrecisionConfig& cfg) {
  if (grid_points < 1000) {
    throw Error(ErrorCode::invalid_argument, "g_min_on_range: need at least 1000 grid points");
  }
  const unsigned wb = cfg.bits + kGuard;
  const Real a = -phi_sq(wb);
  const Real b = const_phi(PrecisionConfig(wb));
  Real h = b - a;
  mpfr_div_ui(h.get(), h.get(), grid_points - 1, MPFR_RNDU);

  GridMinimum out;
  out.grid_min = g(a);
  out.argmin = a;
  Real x(wb);
  for (std::uint64_t i = 1; i < grid_points; ++i) {
    mpfr_mul_ui(x.get(), h.get(), i, MPFR_RNDN);
    x += a;
    if (x > b) x = b;
    Real gx = g(x);
    if (gx < out.grid_min) {
      out.grid_min = gx;
      out.argmin = x;
    }
  }
  // g' is quadratic with its extremum at x = -2/3, so |g'| peaks at an
  // endpoint or there.
  Real slope = max(abs(g_prime(a)), abs(g_prime(b)));
  const Real vertex = Real(-2, wb) / Real(3, wb);
  if (vertex >= a && vertex <= b) slope = max(slope, abs(g_prime(vertex)));
  out.slope_bound = slope.rounded(cfg.bits);
  Real slab(wb);
  mpfr_mul(slab.get(), slope.get(), h.get(), MPFR_RNDU);
  mpfr_div_2ui(slab.get(), slab.get(), 1, MPFR_RNDU);
  Real lower(wb);
  mpfr_sub(lower.get(), out.grid_min.get(), slab.get(), MPFR_RNDD);
  out.lower = Real(cfg.bits);
  mpfr_set(out.lower.get(), lower.get(), MPFR_RNDD);
  out.grid_min = out.grid_min.rounded(cfg.bits);
  out.argmin = out.argmin.rounded(cfg.bits);
  return out;
}

std::vector<LimitRow> limit_estimate(unsigned n_max, const PrecisionConfig& cfg) {
  if (n_max < 2 || n_max > 32) {
    throw Error(ErrorCode::invalid_argument, "limit_estimate: n_max must lie in [2, 32]");
  }
  Stream stream(const_phi(cfg), cfg);
  std::vector<LimitRow> rows;
  for (unsigned n = 2; n <= n_max; ++n) {
    const std::uint64_t fn = fib_u64(n);
    stream.advance(fn - stream.terms());
    LimitRow row;
    row.n = n;
    row.fib_n = fn;
    row.value = stream.value().value;
    row.abs_diff = rows.empty() ? Real(cfg.bits) : abs(row.value - rows.back().value);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sudler
