#include <cmath>
#include <random>

#include "helpers.hpp"
#include "oracle.hpp"
#include "sudler/numtheory.hpp"
#include "sudler/sudler_core.hpp"

using namespace sudler;
namespace bmp = boost::multiprecision;

namespace {

// P_1 .. P_5 of phi, from an mpmath product at 60 digits.
const char* const kP[] = {
    "1.864064847626455243068063337382209382772", "2.518315424891512965670582804837206445223",
    "2.228562995790001604610148259798464118314", "4.440059838297929149620376190449152757022",
    "2.482026850608459302114554527489020982533"};

}  // namespace

TEST_SUITE("sudler_core") {

TEST_CASE("first products of phi") {
  const PrecisionConfig cfg(128);
  const Real phi = const_phi(cfg);
  for (std::uint64_t n = 1; n <= 5; ++n) {
    const SudlerValue v = eval_direct(phi, n, cfg);
    CHECK(v.n_terms == n);
    CHECK(oracle::rel(v.value, oracle::Big(kP[n - 1])) < 1e-36);
    CHECK(oracle::rel(exp(v.log_value), oracle::Big(kP[n - 1])) < 1e-36);
  }
  CHECK(eval_direct(phi, 1, cfg).value.to_string(6) == "1.86406");
}

TEST_CASE("against the oracle product") {
  const PrecisionConfig cfg(128);
  const Real phi = const_phi(cfg);
  for (std::uint64_t n : {34u, 100u, 777u, 2000u}) {
    const SudlerValue v = eval_direct(phi, n, cfg);
    // against the true phi, dominated by the rounding of alpha itself
    CHECK_MESSAGE(oracle::rel(v.value, oracle::sudler(oracle::phi(), n)) < 1e-32, "N = " << n);
    // the stated error bound covers the evaluation error for alpha as stored
    const oracle::Big ref = oracle::sudler(oracle::from(phi), n);
    CHECK(oracle::absdiff(v.log_value, bmp::log(ref)) <= v.err_bound.to_double());
  }
  const Real r2 = sqrt(Real(2, 128)) - Real(1, 128);
  const oracle::Big r2o = bmp::sqrt(oracle::Big(2)) - 1;
  CHECK(oracle::rel(eval_direct(r2, 500, cfg).value, oracle::sudler(r2o, 500)) < 1e-32);
}

TEST_CASE("zero factor") {
  const PrecisionConfig cfg(128);
  const Real half = Real::parse("0.5", 128);
  CHECK(eval_direct(half, 1, cfg).value == 2.0);
  CHECK_ERROR_CODE(eval_direct(half, 2, cfg), ErrorCode::zero_factor);
  CHECK_ERROR_CODE(eval_direct(half, 2, PrecisionConfig(53)), ErrorCode::zero_factor);
  CHECK_ERROR_CODE(eval_direct(half, 0, cfg), ErrorCode::invalid_argument);
}

TEST_CASE("shifted products") {
  const PrecisionConfig cfg(128);
  const Real phi = const_phi(cfg);
  // eps = 0 runs the same arithmetic as the direct product
  for (std::uint64_t n : {1u, 17u, 400u}) {
    CHECK(eval_shifted(phi, n, Real(128), cfg).value == eval_direct(phi, n, cfg).value);
    CHECK(eval_shifted(phi, n, Real(128), cfg).log_value == eval_direct(phi, n, cfg).log_value);
  }
  const Real quarter = Real::parse("0.25", 128);
  CHECK(oracle::rel(eval_shifted(phi, 3, quarter, cfg).value, oracle::Big("1.034217233501092846088169263065367397068")) <
        1e-36);

  // the j-block of N = F_6 + F_9 is P_8(phi, -(-phi)^9)
  const Real eps = -neg_phi_pow(9, cfg);
  const SudlerValue block = eval_shifted(phi, 8, eps, cfg);
  CHECK(oracle::rel(block.value, oracle::Big("1.913567884143932129099198296740322099631")) < 1e-36);
  const Real ratio = eval_direct(phi, 42, cfg).value / eval_direct(phi, 34, cfg).value;
  CHECK(abs(ratio / block.value - Real(1, 128)) < 1e-35);
}

TEST_CASE("stream") {
  const PrecisionConfig cfg(128);
  const Real phi = const_phi(cfg);
  Stream s(phi, cfg);
  for (int k = 0; k < 3; ++k) {
    s.advance();
    CHECK(oracle::rel(s.value().value, oracle::Big(kP[k])) < 1e-36);
  }
  s.advance(fib_u64(24) - 3);
  CHECK(s.terms() == 46368);
  CHECK(s.value().value >= 2.40);
  CHECK(s.value().value <= 2.41);
  CHECK(std::fabs(s.log_approx() - s.value().log_value.to_double()) < 1e-15);

  Stream again(phi, cfg);
  again.advance(46368);
  CHECK(again.linear() == s.linear());
  CHECK(again.value().log_value == s.value().log_value);
}

TEST_CASE("fast path") {
  const PrecisionConfig fast(53);
  const PrecisionConfig precise(128);
  // A 128-bit alpha keeps the 128-bit fixed-point phase accurate.
  const Real phi = const_phi(precise);
  Stream f(phi, fast);
  Stream p(phi, precise);
  CHECK(f.fast());
  CHECK_FALSE(p.fast());
  CHECK_ERROR_CODE(f.linear(), ErrorCode::invalid_argument);
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    f.advance();
    p.advance();
    if (n % 9973 == 0 || n == 1) {
      const SudlerValue fv = f.value();
      const double diff = std::fabs(fv.log_value.to_double() - p.value().log_value.to_double());
      CHECK(diff <= fv.err_bound.to_double());
      CHECK(diff < 1e-11);
    }
  }
}

TEST_CASE("sudler value product") {
  const PrecisionConfig cfg(128);
  const Real phi = const_phi(cfg);
  const SudlerValue a = eval_direct(phi, 3, cfg);
  const SudlerValue b = eval_shifted(phi, 2, Real(3, 128) * phi, cfg);
  const SudlerValue ab = a * b;
  CHECK(ab.n_terms == 5);
  CHECK(abs(ab.value / eval_direct(phi, 5, cfg).value - Real(1, 128)) < 1e-36);
}

}
