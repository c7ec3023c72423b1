#pragma once

// Fibonacci numbers, Zeckendorf representations, powers of -phi through the
// Fibonacci identity, and regular continued fractions.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sudler/mp_scalar.hpp"

namespace sudler {

/// F_n exactly.
BigInt fib(unsigned n);

/// F_n for n <= 92 (the largest index that fits in 64 bits).
std::uint64_t fib_u64(unsigned n);
inline constexpr unsigned kMaxFibIndexU64 = 92;

/// Immutable table F_0 .. F_max.
class FibTable {
 public:
  explicit FibTable(unsigned max_index);

  unsigned max_index() const noexcept { return static_cast<unsigned>(values_.size() - 1); }
  const BigInt& operator[](unsigned n) const { return values_.at(n); }
  std::span<const BigInt> values() const noexcept { return values_; }

 private:
  std::vector<BigInt> values_;
};

/// Strictly increasing Fibonacci indices (n_1, ..., n_m) with n_1 >= 2 and
/// gaps of at least 2.
class Zeckendorf {
 public:
  /// Validates the index invariants; throws Error(invalid_argument).
  explicit Zeckendorf(std::vector<unsigned> indices);

  std::span<const unsigned> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  unsigned operator[](std::size_t j) const { return indices_.at(j); }

  BigInt value() const;
  /// "100 = F_4 + F_6 + F_11"
  std::string to_string() const;

  friend bool operator==(const Zeckendorf&, const Zeckendorf&) = default;

 private:
  std::vector<unsigned> indices_;
};

/// Greedy largest-Fibonacci-first decomposition. N >= 1.
Zeckendorf zeckendorf(const BigInt& n);
Zeckendorf zeckendorf(std::uint64_t n);

/// Length m of the Zeckendorf representation, without allocating.
unsigned zeckendorf_length(std::uint64_t n) noexcept;

/// (-phi)^n for n >= 1, evaluated as F_{n-1} - F_n * phi with enough guard
/// bits to absorb the cancellation, then rounded to cfg.bits.
Real neg_phi_pow(unsigned n, const PrecisionConfig& cfg);

struct ShiftCoefficients {
  /// eps_j = -sum_{s>j} (-phi)^{n_s}
  std::vector<Real> eps;
  /// p_j = sum_{s>j} (-phi)^{n_s - n_j}, always inside [-phi^2, phi]
  std::vector<Real> p;
};

ShiftCoefficients shift_coefficients(const Zeckendorf& z, const PrecisionConfig& cfg);

/// Shift produced by an arbitrary admissible tail of indices following a block.
/// `tail` must be strictly increasing with gaps >= 2.
Real eps_from_tail(std::span<const unsigned> tail, const PrecisionConfig& cfg);

struct ContinuedFraction {
  std::vector<std::uint64_t> partial_quotients;  // a_1 .. a_depth
  std::vector<BigInt> denominators;              // q_1 .. q_depth
};

/// Regular continued fraction [0; a_1, a_2, ...] of alpha in (0, 1).
/// Throws Error(precision_exhausted) when depth > precision / 4.
ContinuedFraction cf_expand(const Real& alpha, unsigned depth);

/// q_1 .. q_k of a partial-quotient list (q_{-1} = 0, q_0 = 1).
std::vector<BigInt> convergent_denominators(std::span<const std::uint64_t> quotients);

/// [0; a_1, ..., a_k, 1, 1, 1, ...]: the prefix followed by the golden tail,
/// so the result is always irrational.
Real alpha_from_cf_prefix(std::span<const std::uint64_t> prefix, const PrecisionConfig& cfg);

}  // namespace sudler
