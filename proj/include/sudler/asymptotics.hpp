#pragma once

// Quantitative layer: the u_t series with a certified tail, the infinite
// product it controls, the product bracket 1 - A < prod(1 - |a_t|) < 1/(1 - A),
// the A- and C-ratio estimates, the margin function g, and the Fibonacci
// subsequence table that converges to 2.407...

#include <cstdint>
#include <span>
#include <vector>

#include "sudler/mp_scalar.hpp"

namespace sudler {

struct SeriesBound {
  Real partial;      // sum_{t <= T}
  Real tail;         // certified upper bound on sum_{t > T}
  Real total_upper;  // partial + tail + rounding slack
  std::uint64_t T = 0;
};

/// u_t = 2 (sqrt(5) t - {t phi} + 1/2)
Real u_t(std::uint64_t t, const PrecisionConfig& cfg);

/// sum u_t^-2 with the tail bounded through u_t > 2 sqrt(5) t - 1:
///   sum_{t > T} u_t^-2 <= 1 / (2 sqrt(5) (2 sqrt(5) T - 1)).
SeriesBound sum_inv_u_sq(std::uint64_t T, const PrecisionConfig& cfg);

struct InfiniteProductBound {
  Real finite;       // prod_{t <= T} (1 - w^2 / u_t^2)
  Real tail_factor;  // 1 - w^2 * tail, a lower bound on the remainder
  Real lower;        // finite * tail_factor
  std::uint64_t T = 0;
};

/// Certified lower bound on prod_{t >= 1} (1 - w^2 / u_t^2). Throws
/// Error(tail_too_large) when |w| > sqrt(5) or w^2 * tail >= 1.
InfiniteProductBound perturbed_c_infinity(const Real& w, std::uint64_t T, const PrecisionConfig& cfg);

struct ProductBracket {
  Real lower;    // 1 - A
  Real upper;    // 1 / (1 - A)
  Real product;  // prod (1 - |a_t|)
  bool inside = false;
};

/// Throws Error(sum_exceeds_one) when A = sum |a_t| >= 1 and
/// Error(invalid_argument) for fewer than two terms.
ProductBracket prod_bound_check(std::span<const Real> a, const PrecisionConfig& cfg);

/// |Abar_n(eps) / A_n|
Real ratio_A(unsigned n, const Real& eps, const PrecisionConfig& cfg);
/// 1 + p
Real ratio_A_model(const Real& p);

/// 1 - (1 + 2p)^2 / 7 for p in [-phi^2, phi]; Error(out_of_range) otherwise.
Real ratio_C_lower(const Real& p);

/// g(x) = (1 + x)(1 - (1 + 2x)^2 / 7)
Real g(const Real& x);

struct GridMinimum {
  Real grid_min;    // smallest sampled value
  Real argmin;
  Real slope_bound; // max |g'| on the interval
  Real lower;       // grid_min - slope_bound * h / 2, a bound for all x
};

/// Lower bound of g on [-phi^2, phi] from a uniform grid plus a slab of
/// half a grid step times the largest |g'|. grid_points >= 1000.
GridMinimum g_min_on_range(std::uint64_t grid_points, const PrecisionConfig& cfg);

struct LimitRow {
  unsigned n = 0;
  std::uint64_t fib_n = 0;
  Real value;      // P_{F_n}(phi)
  Real abs_diff;   // |P_{F_n} - P_{F_{n-1}}|, zero for the first row
};

/// P_{F_n}(phi) for n = 2 .. n_max (n_max <= 32), from a single stream.
std::vector<LimitRow> limit_estimate(unsigned n_max, const PrecisionConfig& cfg);

}  // namespace sudler
