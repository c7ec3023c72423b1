#pragma once

// Reference computations that share no code with the library: Boost's
// cpp_bin_float_50 (about 166 bits, software floating point) instead of MPFR,
// plain loops instead of identities, exhaustive search instead of greedy
// choices.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sudler/mp_scalar.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

inline Big pi() { return boost::math::constants::pi<Big>(); }
inline Big phi() { return (boost::multiprecision::sqrt(Big(5)) - 1) / 2; }

inline Big from(const sudler::Real& x) { return Big(x.to_string(60)); }

inline double rel(const sudler::Real& a, const Big& b) {
  return static_cast<double>(boost::multiprecision::abs(from(a) - b) / boost::multiprecision::abs(b));
}

inline double absdiff(const sudler::Real& a, const Big& b) {
  return static_cast<double>(boost::multiprecision::abs(from(a) - b));
}

inline Big frac(const Big& x) { return x - boost::multiprecision::floor(x); }

inline Big two_sin_pi(const Big& x) { return 2 * boost::multiprecision::sin(pi() * frac(x)); }

/// prod_{r=1}^{N} |2 sin(pi (r alpha + eps))|, one factor at a time.
inline Big sudler(const Big& alpha, std::uint64_t n, const Big& eps = Big(0)) {
  Big p = 1;
  for (std::uint64_t r = 1; r <= n; ++r) p *= boost::multiprecision::abs(two_sin_pi(Big(r) * alpha + eps));
  return p;
}

inline std::uint64_t fib(unsigned n) {
  std::uint64_t a = 0, b = 1;
  for (unsigned i = 0; i < n; ++i) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

/// Every admissible index set (indices >= 2, gaps >= 2) with F-sum <= limit,
/// bucketed by its sum.
inline std::map<std::uint64_t, std::vector<std::vector<unsigned>>> admissible_sets(std::uint64_t limit) {
  std::map<std::uint64_t, std::vector<std::vector<unsigned>>> out;
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned next, std::uint64_t sum) -> void {
    if (!cur.empty()) out[sum].push_back(cur);
    for (unsigned k = next; fib(k) + sum <= limit; ++k) {
      cur.push_back(k);
      self(self, k + 2, sum + fib(k));
      cur.pop_back();
    }
  };
  rec(rec, 2, 0);
  return out;
}

/// 2 (sqrt5 t - {t phi} + 1/2)
inline Big u(std::uint64_t t) {
  return 2 * (boost::multiprecision::sqrt(Big(5)) * t - frac(Big(t) * phi()) + Big(1) / 2);
}

/// s_{nt} straight from its definition, fractional part in integers.
inline Big s(unsigned n, std::uint64_t t) {
  const std::uint64_t F = fib(n), F1 = fib(n - 1);
  const std::uint64_t r = (t * F1) % F;
  return 2 * boost::multiprecision::sin(pi() * (Big(t) / F - boost::multiprecision::pow(phi(), n) *
                                                                  (Big(r) / F - Big(1) / 2)));
}

}  // namespace oracle
