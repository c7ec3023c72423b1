#pragma once

// Factorisation of the Fibonacci-length blocks
//   P_{F_n}(phi, eps) = Abar_n(eps) * B_n * Cbar_n(eps)
// and the ingredients s_{nt}, v_n it is written in.

#include <cstdint>
#include <optional>
#include <vector>

#include "sudler/mp_scalar.hpp"

namespace sudler {

struct DecompositionResult {
  unsigned n = 0;
  Real eps;
  Real A;
  Real B;
  Real C;
  Real recombined;  // A * B * C
  Real direct;      // P_{F_n}(phi, eps) by direct evaluation
  Real residual;    // |recombined / direct - 1|
};

/// Everything that depends only on the block index n, cached so that many
/// shifts eps can be checked against one block. F_n must fit in 64 bits.
/// The caches are not synchronised: one kernel per thread.
class BlockKernel {
 public:
  BlockKernel(unsigned n, const PrecisionConfig& cfg);

  unsigned index() const noexcept { return n_; }
  std::uint64_t fib_n() const noexcept { return fn_; }
  const PrecisionConfig& config() const noexcept { return cfg_; }

  /// phi^n and (-phi)^n at working precision (cfg.bits + guard).
  const Real& phi_pow() const noexcept { return phi_n_; }
  const Real& neg_phi_pow() const noexcept { return neg_phi_n_; }

  /// s_{nt} for 0 <= t < F_n, with {t F_{n-1} / F_n} taken in exact integer
  /// arithmetic.
  Real s(std::uint64_t t) const;
  Real v(const Real& eps) const;

  Real A() const;
  Real A_bar(const Real& eps) const;
  Real B() const;
  Real C() const;
  /// Throws Error(out_of_range) unless |eps| <= phi^(n+1), and
  /// Error(non_positive_factor) if a factor leaves (0, 1].
  Real C_bar(const Real& eps) const;

  DecompositionResult verify(const Real& eps) const;

 private:
  Real c_product(const Real& w) const;
  void fill_table() const;
  void check_admissible(const Real& eps) const;

  unsigned n_;
  PrecisionConfig cfg_;
  unsigned work_bits_;
  std::uint64_t fn_;
  std::uint64_t fn1_;
  Real phi_n_;
  Real neg_phi_n_;
  mutable std::vector<Real> s2_;        // s_{nt}^2 for t = 1 .. floor(F_n / 2)
  mutable std::vector<double> s2_fast_;
  mutable std::optional<Real> b_;
};

Real s_nt(unsigned n, std::uint64_t t, const PrecisionConfig& cfg);
Real v_n(unsigned n, const Real& eps, const PrecisionConfig& cfg);
Real A_n(unsigned n, const PrecisionConfig& cfg);
Real A_bar(unsigned n, const Real& eps, const PrecisionConfig& cfg);
Real B_n(unsigned n, const PrecisionConfig& cfg);
Real C_n(unsigned n, const PrecisionConfig& cfg);
Real C_bar(unsigned n, const Real& eps, const PrecisionConfig& cfg);
DecompositionResult verify_identity(unsigned n, const Real& eps, const PrecisionConfig& cfg);

/// prod_{r=1}^{q-1} |2 sin(pi r p / q)|, which equals q for coprime p, q.
/// Throws Error(not_coprime).
Real sine_product_rational(std::uint64_t p, std::uint64_t q, const PrecisionConfig& cfg);

}  // namespace sudler
