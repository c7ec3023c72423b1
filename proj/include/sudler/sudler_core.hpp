#pragma once

// Direct, shifted and streaming evaluation of the sine product
//   P_N(alpha, eps) = prod_{r=1}^{N} |2 sin(pi (r alpha + eps))|.

#include <cstdint>
#include <memory>

#include "sudler/mp_scalar.hpp"

namespace sudler {

struct SudlerValue {
  Real log_value;
  Real value;
  std::uint64_t n_terms = 0;
  /// Absolute bound on the evaluation error of log_value (given alpha and eps
  /// exactly as represented).
  Real err_bound;

  /// Product of two disjoint sub-products.
  friend SudlerValue operator*(const SudlerValue& a, const SudlerValue& b);
};

/// Stateful cursor over N = 1, 2, 3, ...  Each advance() is O(1): the phase
/// r*alpha + eps mod 1 is held exactly in a register wide enough for the
/// grids of alpha and eps, and one sine factor is multiplied in.
///
/// With cfg.fast_path() the phase is a 128-bit fixed-point fraction, factors
/// are IEEE doubles and their logarithms are summed with Neumaier
/// compensation. Otherwise factors come from MPFR at cfg.bits and are
/// multiplied into a linear accumulator carrying 32 guard bits; MPFR's
/// exponent range makes over- and underflow a non-issue there.
///
/// Single owner; may be moved between threads between advances.
class Stream {
 public:
  Stream(const Real& alpha, const PrecisionConfig& cfg);
  Stream(const Real& alpha, const Real& eps, const PrecisionConfig& cfg);
  ~Stream();
  Stream(Stream&&) noexcept;
  Stream& operator=(Stream&&) noexcept;

  /// N -> N + 1. Throws Error(zero_factor) when the new factor is exactly 0.
  void advance();
  void advance(std::uint64_t steps);

  std::uint64_t terms() const noexcept;
  const PrecisionConfig& config() const noexcept;
  bool fast() const noexcept;

  /// Snapshot of the current product (computes one logarithm in MPFR mode).
  SudlerValue value() const;
  /// log P_N as a double; cheap in both modes.
  double log_approx() const noexcept;
  /// Linear accumulator (MPFR mode only; throws in fast mode).
  const Real& linear() const;

 private:
  struct Precise;
  struct Fast;
  std::unique_ptr<Precise> precise_;
  std::unique_ptr<Fast> fast_;
  PrecisionConfig cfg_;
};

/// P_N(alpha). Requires N >= 1; alpha is taken modulo 1.
SudlerValue eval_direct(const Real& alpha, std::uint64_t n, const PrecisionConfig& cfg);

/// P_N(alpha, eps). eval_shifted(alpha, N, 0) runs the exact same arithmetic
/// as eval_direct(alpha, N).
SudlerValue eval_shifted(const Real& alpha, std::uint64_t n, const Real& eps,
                         const PrecisionConfig& cfg);

}  // namespace sudler
