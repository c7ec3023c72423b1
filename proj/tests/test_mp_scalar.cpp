#include <cmath>

#include "helpers.hpp"
#include "oracle.hpp"
#include "sudler/mp_scalar.hpp"

using namespace sudler;

TEST_SUITE("mp_scalar") {

TEST_CASE("precision config") {
  CHECK(PrecisionConfig().bits == 128);
  CHECK(PrecisionConfig(53).fast_path());
  CHECK_FALSE(PrecisionConfig(64).fast_path());
  CHECK_ERROR_CODE(PrecisionConfig(52), ErrorCode::invalid_argument);
  CHECK(PrecisionConfig::for_scan(1'000'000).bits == 128);
  CHECK(PrecisionConfig::for_scan(1'000'000, 53).bits == 84);
}

TEST_CASE("parse and print") {
  const Real half = Real::parse("0.5", 128);
  CHECK(half == 0.5);
  CHECK(Real::parse("-3.125e-2", 64) == -0.03125);
  CHECK_ERROR_CODE(Real::parse("0.5x", 128), ErrorCode::invalid_argument);
  CHECK_ERROR_CODE(Real::parse("", 128), ErrorCode::invalid_argument);
  CHECK(Real(2, 128).to_string(5) == "2");
  CHECK(Real::parse("0.125", 128).to_string(17) == "0.125");
}

TEST_CASE("arithmetic takes the wider precision") {
  const Real a(1, 64), b(3, 200);
  const Real q = a / b;
  CHECK(q.precision() == 200);
  CHECK(oracle::rel(q, oracle::Big(1) / 3) < 1e-49);
  CHECK(frac(Real(-0.25, 64)) == 0.75);
  CHECK(frac(Real(3.0, 64)) == 0.0);
  CHECK(floor(Real(-0.5, 64)) == -1.0);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(1000) == 10);
  CHECK(ceil_log2(1024) == 10);
}

TEST_CASE("const_phi") {
  CHECK(const_phi(PrecisionConfig(53)).to_double() == 0.6180339887498949);
  const Real v = const_phi(PrecisionConfig(128));
  const Real residual = abs(v * v + v - Real(1, 128));
  CHECK(residual <= std::ldexp(1.0, -124));
  CHECK(const_phi(PrecisionConfig(256)).rounded(128) == v);
  CHECK(oracle::rel(v, oracle::phi()) < 1e-38);
}

TEST_CASE("two_sin_pi") {
  const PrecisionConfig cfg(128);
  CHECK(two_sin_pi(Real(0.5, 128), cfg) == 2.0);
  CHECK(oracle::rel(two_sin_pi(Real(1, 128) / Real(6, 128), cfg), oracle::Big(1)) < 1e-37);
  CHECK(oracle::rel(two_sin_pi(const_phi(cfg), cfg), oracle::Big("1.864064847626455243068063337382209382772")) < 1e-37);
  // odd and 2-periodic
  CHECK(two_sin_pi(Real(1.25, 128), cfg) < 0.0);
  CHECK(oracle::rel(two_sin_pi(Real(2.25, 128), cfg), 2 * boost::multiprecision::sin(oracle::pi() / 4)) < 1e-37);
  CHECK(oracle::rel(two_sin_pi(Real(-0.25, 128), cfg), -2 * boost::multiprecision::sin(oracle::pi() / 4)) < 1e-37);
  // tiny arguments keep relative accuracy, also just below an integer
  const double tiny = std::ldexp(1.0, -100);
  const oracle::Big expect = 2 * boost::multiprecision::sin(oracle::pi() * oracle::Big(tiny));
  CHECK(oracle::rel(two_sin_pi(Real(tiny, 128), cfg), expect) < 1e-37);
  const Real near_one = Real(1, 200) - Real(tiny, 200);
  CHECK(oracle::rel(two_sin_pi(near_one, cfg), expect) < 1e-37);
}

TEST_CASE("log_abs_two_sin_pi") {
  const PrecisionConfig cfg(128);
  CHECK(oracle::rel(log_abs_two_sin_pi(Real(0.5, 128), cfg), boost::multiprecision::log(oracle::Big(2))) < 1e-37);
  CHECK(abs(log_abs_two_sin_pi(Real(1, 128) / Real(6, 128), cfg)) < 1e-37);
  const Real lp = log_abs_two_sin_pi(const_phi(cfg), cfg);
  CHECK(oracle::rel(exp(lp), oracle::Big("1.864064847626455243068063337382209382772")) < 1e-37);
  CHECK_ERROR_CODE(log_abs_two_sin_pi(Real(3, 128), cfg), ErrorCode::integer_argument);
  CHECK_ERROR_CODE(log_abs_two_sin_pi(Real(0, 128), cfg), ErrorCode::integer_argument);
}

TEST_CASE("error names") {
  CHECK(std::string(error_code_name(ErrorCode::zero_factor)) == "ZeroFactor");
  CHECK(std::string(error_code_name(ErrorCode::tail_too_large)) == "TailTooLarge");
}

}
