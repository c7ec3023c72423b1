#include <cmath>

#include "helpers.hpp"
#include "oracle.hpp"
#include "sudler/numtheory.hpp"

using namespace sudler;
namespace bmp = boost::multiprecision;

TEST_SUITE("numtheory") {

TEST_CASE("fibonacci") {
  CHECK(fib(0) == 0);
  CHECK(fib(10) == 55);
  CHECK(fib(92) == BigInt("7540113804746346429"));
  CHECK(fib(100) == BigInt("354224848179261915075"));
  for (unsigned n = 0; n <= 92; ++n) CHECK(fib_u64(n) == oracle::fib(n));
  CHECK_ERROR_CODE(fib_u64(93), ErrorCode::out_of_range);
  const FibTable t(30);
  CHECK(t.max_index() == 30);
  CHECK(t[30] == 832040);
}

TEST_CASE("zeckendorf examples") {
  CHECK(zeckendorf(13u) == Zeckendorf({7}));
  CHECK(zeckendorf(100u) == Zeckendorf({4, 6, 11}));
  CHECK(zeckendorf(4u) == Zeckendorf({2, 4}));
  CHECK(zeckendorf(100u).to_string() == "100 = F_4 + F_6 + F_11");
  CHECK(zeckendorf(1u) == Zeckendorf({2}));
  CHECK_ERROR_CODE(zeckendorf(std::uint64_t{0}), ErrorCode::invalid_argument);
  CHECK_ERROR_CODE(Zeckendorf({1, 4}), ErrorCode::invalid_argument);
  CHECK_ERROR_CODE(Zeckendorf({4, 5}), ErrorCode::invalid_argument);
  CHECK_ERROR_CODE(Zeckendorf({6, 4}), ErrorCode::invalid_argument);
}

TEST_CASE("zeckendorf beyond 64 bits") {
  const BigInt n("123456789012345678901234567890");
  const Zeckendorf z = zeckendorf(n);
  CHECK(z.value() == n);
  const Zeckendorf big = zeckendorf(fib(150) + fib(100) + 1);
  CHECK(big == Zeckendorf({2, 100, 150}));
}

TEST_CASE("zeckendorf_length agrees with the representation") {
  for (std::uint64_t n = 1; n <= 5000; ++n) CHECK(zeckendorf_length(n) == zeckendorf(n).size());
}

TEST_CASE("neg_phi_pow") {
  const PrecisionConfig cfg(128);
  CHECK(oracle::rel(neg_phi_pow(1, cfg), -oracle::phi()) < 1e-37);
  CHECK(oracle::rel(neg_phi_pow(2, cfg), oracle::Big(1) - oracle::phi()) < 1e-37);
  CHECK(neg_phi_pow(5, cfg).to_string(7) == "-0.09016994");
  for (unsigned n = 1; n <= 150; ++n) {
    CHECK_MESSAGE(oracle::rel(neg_phi_pow(n, cfg), bmp::pow(-oracle::phi(), n)) < 1e-37, "n = " << n);
  }
  // F_n phi^n -> 1/sqrt5 with error below phi^(2n-1)
  for (unsigned n = 20; n <= 80; n += 10) {
    const Real dev = abs(Real(fib(n), 256) * abs(neg_phi_pow(n, PrecisionConfig(256))) -
                         Real(1, 256) / const_sqrt5(256));
    CHECK(dev.to_double() <= std::pow(0.6180339887498949, 2 * n - 1));
  }
}

TEST_CASE("shift coefficients") {
  const PrecisionConfig cfg(128);
  const auto single = shift_coefficients(Zeckendorf({7}), cfg);
  CHECK(single.eps.at(0).is_zero());
  CHECK(single.p.at(0).is_zero());

  const auto sc = shift_coefficients(Zeckendorf({4, 6, 11}), cfg);
  const oracle::Big ph = oracle::phi();
  CHECK(oracle::rel(sc.eps[0], -(bmp::pow(ph, 6) - bmp::pow(ph, 11))) < 1e-36);
  CHECK(oracle::rel(sc.p[0], bmp::pow(ph, 2) - bmp::pow(ph, 7)) < 1e-36);
  CHECK(sc.eps[0].to_string(6) == "-0.0507031");
  CHECK(sc.p[0].to_string(6) == "0.347524");
  CHECK(sc.eps[2].is_zero());

  const auto two = shift_coefficients(Zeckendorf({2, 4}), cfg);
  CHECK(oracle::rel(two.p[0], bmp::pow(ph, 2)) < 1e-37);

  const std::vector<unsigned> tail{6, 11};
  CHECK(eps_from_tail(tail, cfg) == sc.eps[0]);
}

TEST_CASE("continued fractions") {
  const PrecisionConfig cfg(128);
  const auto golden = cf_expand(const_phi(cfg), 10);
  CHECK(golden.partial_quotients == std::vector<std::uint64_t>(10, 1));
  CHECK(golden.denominators.back() == fib(11));

  const Real r2 = sqrt(Real(2, 128)) - Real(1, 128);
  CHECK(cf_expand(r2, 5).partial_quotients == std::vector<std::uint64_t>(5, 2));

  const Real near = Real(2, 128) / Real(7, 128) + Real::parse("1e-20", 128);
  const auto cf = cf_expand(near, 2);
  CHECK(cf.partial_quotients == std::vector<std::uint64_t>{3, 2});

  CHECK_ERROR_CODE(cf_expand(const_phi(cfg), 40), ErrorCode::precision_exhausted);
  CHECK_ERROR_CODE(cf_expand(Real(1.5, 128), 3), ErrorCode::invalid_argument);

  const std::vector<std::uint64_t> q{1, 500, 1};
  const auto den = convergent_denominators(q);
  CHECK(den == std::vector<BigInt>{1, 501, 502});

  const std::vector<std::uint64_t> prefix{2, 2, 2};
  const Real a = alpha_from_cf_prefix(prefix, cfg);
  CHECK(cf_expand(a, 8).partial_quotients == std::vector<std::uint64_t>{2, 2, 2, 1, 1, 1, 1, 1});
}

}
