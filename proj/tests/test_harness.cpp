#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracle.hpp"
#include "sudler/harness.hpp"
#include "sudler/numtheory.hpp"
#include "sudler/sudler_core.hpp"

using namespace sudler;
namespace bmp = boost::multiprecision;

namespace {
const PrecisionConfig kCfg(128);
const char* const kP[] = {"1.864064847626455243068063337382209382772", "2.518315424891512965670582804837206445223",
                          "2.228562995790001604610148259798464118314", "4.440059838297929149620376190449152757022",
                          "2.482026850608459302114554527489020982533"};
}  // namespace

TEST_SUITE("harness") {

TEST_CASE("parse_alpha") {
  CHECK(parse_alpha("golden", kCfg) == const_phi(kCfg));
  CHECK(parse_alpha("dec:0.25", kCfg) == 0.25);
  CHECK(abs(parse_alpha("cf:2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2", kCfg) -
            (sqrt(Real(2, 128)) - Real(1, 128))) < 1e-30);
  CHECK_ERROR_CODE(parse_alpha("dec:1.5", kCfg), ErrorCode::invalid_argument);
  CHECK_ERROR_CODE(parse_alpha("dec:0", kCfg), ErrorCode::invalid_argument);
  CHECK_ERROR_CODE(parse_alpha("silver", kCfg), ErrorCode::invalid_argument);
  CHECK_ERROR_CODE(parse_alpha("cf:", kCfg), ErrorCode::invalid_argument);
  CHECK_ERROR_CODE(parse_alpha("cf:1,x", kCfg), ErrorCode::invalid_argument);
}

TEST_CASE("blockwise evaluation") {
  const Real phi = const_phi(kCfg);
  const SudlerValue f9 = blockwise_eval(34, kCfg);
  CHECK(abs(f9.value / eval_direct(phi, 34, kCfg).value - Real(1, 128)) < 1e-35);
  for (std::uint64_t N : {4u, 100u, 12345u, 99999u}) {
    const SudlerValue b = blockwise_eval(N, kCfg);
    CHECK(b.n_terms == N);
    CHECK_MESSAGE(abs(b.value / eval_direct(phi, N, kCfg).value - Real(1, 128)) <= 1e-15, "N = " << N);
  }
  CHECK(oracle::rel(blockwise_eval(4, kCfg).value, oracle::Big(kP[3])) < 1e-34);

  BlockCache cache(kCfg);
  const SudlerValue a = blockwise_eval(100, cache);
  const std::size_t blocks = cache.size();
  CHECK(blocks == 3);
  // 101 = F_2 + F_4 + F_6 + F_11: a block depends only on the indices above
  // it, so the three blocks of 100 are reused and only the F_2 block is new
  const SudlerValue b = blockwise_eval(101, cache);
  CHECK(cache.size() == blocks + 1);
  CHECK(cache.hits() == 3);
  CHECK(abs(b.value / eval_direct(phi, 101, kCfg).value - Real(1, 128)) <= 1e-15);
  CHECK(blockwise_eval(100, cache).value == a.value);
  CHECK_ERROR_CODE(blockwise_eval(0, kCfg), ErrorCode::invalid_argument);
}

TEST_CASE("scan of the first five") {
  std::vector<ScanRecord> recs;
  ScanOptions so;
  so.on_record = [&](const ScanRecord& r) { recs.push_back(r); };
  const ScanSummary s = scan(const_phi(kCfg), 1, 5, kCfg, so);
  REQUIRE(recs.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(recs[k].N == static_cast<std::uint64_t>(k + 1));
    CHECK(oracle::rel(recs[k].P, oracle::Big(kP[k])) < 1e-35);
    CHECK(abs(exp(recs[k].logP) - recs[k].P) < 1e-35);
    CHECK(recs[k].m == zeckendorf(recs[k].N).size());
  }
  CHECK(recs[0].is_min);
  CHECK(recs[0].is_max);
  CHECK(recs[1].is_max);
  CHECK_FALSE(recs[2].is_min);
  CHECK(recs[3].is_max);
  CHECK(s.min_N == 1);
  CHECK(s.max_N == 4);
  REQUIRE(s.growth);
  CHECK(s.growth->C1_hat <= s.growth->C2_hat);
  CHECK(s.growth->argmax_N == 2);
  CHECK_FALSE(s.fast);
  CHECK_ERROR_CODE(scan(const_phi(kCfg), 3, 2, kCfg), ErrorCode::invalid_argument);
  CHECK_ERROR_CODE(scan(Real::parse("0.5", 128), 1, 5, kCfg), ErrorCode::zero_factor);
}

TEST_CASE("scan output is deterministic CSV") {
  std::ostringstream a, b;
  for (std::ostringstream* out : {&a, &b}) {
    CsvSink sink(*out, 53);
    ScanOptions so;
    so.csv = &sink;
    scan(const_phi(kCfg), 1, 200, PrecisionConfig(53), so);
  }
  CHECK(a.str() == b.str());
  std::istringstream in(a.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == CsvSink::kHeader);
  std::getline(in, line);
  CHECK(line.starts_with("1,0.62275"));
  CHECK(line.ends_with(",1,1,1"));
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 200);
  CHECK(CsvSink::digits_for(53) == 17);
  CHECK(CsvSink::digits_for(128) == 36);
}

TEST_CASE("scan of sqrt2 - 1") {
  const Real a = sqrt(Real(2, 128)) - Real(1, 128);
  std::size_t n = 0;
  ScanOptions so;
  so.on_record = [&](const ScanRecord& r) {
    ++n;
    CHECK(r.P > 0.0);
  };
  const ScanSummary s = scan(a, 1, 100, kCfg, so);
  CHECK(n == 100);
  CHECK(s.min_P > 0.0);
}

TEST_CASE("fast scan rechecks new minima") {
  const ScanSummary s = scan(const_phi(kCfg), 1, 50'000, PrecisionConfig(53));
  CHECK(s.fast);
  CHECK(s.min_N == 1);
  REQUIRE(s.rechecks.size() == 1);
  CHECK(s.rechecks[0].N == 1);
  CHECK(s.max_recheck_diff < 1e-12);
  CHECK(s.min_confirmed);
}

TEST_CASE("growth fit") {
  std::vector<ScanRecord> recs(3);
  recs[0].N = 1;
  recs[0].logP = Real(0.6, 128);
  recs[1].N = 4;
  recs[1].logP = Real(std::log(4.0) * 0.5, 128);
  recs[2].N = 16;
  recs[2].logP = Real(std::log(16.0) * 1.5, 128);
  const GrowthFit g = growth_fit(recs);
  CHECK(std::fabs(g.C1_hat - 0.5) < 1e-12);
  CHECK(std::fabs(g.C2_hat - 1.5) < 1e-12);
  CHECK(g.argmin_N == 4);
  CHECK(g.argmax_N == 16);
}

TEST_CASE("envelope") {
  const auto rows = conjecture_envelope(10, kCfg);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].n == 3);
  CHECK(rows[0].lo == 1);
  CHECK(rows[0].hi == 1);
  const EnvelopeRow& r5 = rows[2];
  CHECK(r5.lo == 3);
  CHECK(r5.hi == 4);
  CHECK(r5.min_N == 3);
  CHECK(r5.max_N == 4);
  CHECK(oracle::rel(r5.min_P, oracle::Big(kP[2])) < 1e-35);
  CHECK(oracle::rel(r5.max_P, oracle::Big(kP[3])) < 1e-35);
  for (const auto& r : rows) CHECK_MESSAGE(r.holds(), "n = " << r.n);
  CHECK_ERROR_CODE(conjecture_envelope(29, kCfg), ErrorCode::invalid_argument);
}

TEST_CASE("sampled tails are admissible") {
  for (unsigned n : {2u, 9u, 20u}) {
    const auto tails = sample_tails(n, 300, 99);
    CHECK(tails.size() == 303);
    CHECK(tails[0].empty());
    CHECK(tails[1].front() == n + 2);
    CHECK(tails[2].front() == n + 3);
    for (const auto& t : tails) {
      if (t.empty()) continue;
      CHECK(t.front() >= n + 2);
      for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] >= t[k - 1] + 2);
    }
    CHECK(sample_tails(n, 300, 99) == tails);
    CHECK(sample_tails(n, 300, 100) != tails);
  }
}

TEST_CASE("threshold scan") {
  const ThresholdReport rep = threshold_scan(14, 60, kDefaultSeed, PrecisionConfig(53));
  REQUIRE(rep.rows.size() == 13);
  CHECK(rep.raw_min > 0.0);
  CHECK(rep.K1_hat > 0.0);
  CHECK(rep.K1_hat <= 1.0);
  CHECK(rep.K2_hat >= 1.0);
  REQUIRE(rep.n_star);
  CHECK(*rep.n_star <= 12);
  REQUIRE(rep.J_hat);
  CHECK(*rep.J_hat == (*rep.n_star + 1) / 2);
  REQUIRE(rep.min_ratio);
  CHECK(*rep.min_ratio >= 5.0 / 12.0);
  for (const auto& row : rep.rows) {
    CHECK(row.samples == 63);
    CHECK(row.min_block > 0.0);
    CHECK(row.min_block <= row.unshifted);
    CHECK(row.unshifted <= row.max_block);
    CHECK(row.min_ratio.has_value() == (row.n >= 10));
  }
  // P_{F_10}(phi)
  CHECK(std::fabs(rep.rows[8].unshifted - 2.398809244739628) < 1e-12);
  const ThresholdReport again = threshold_scan(14, 60, kDefaultSeed, PrecisionConfig(53));
  CHECK(again.raw_min == rep.raw_min);
  CHECK_ERROR_CODE(threshold_scan(27, 1, 1, kCfg), ErrorCode::invalid_argument);
}

TEST_CASE("contrast with a large partial quotient") {
  const std::vector<std::uint64_t> dip{1, 500};
  const ContrastResult c = lubinsky_contrast(dip, kCfg);
  CHECK(c.limit == 502);
  CHECK(c.dip_quotient_index == 2);
  CHECK(c.min_P < 0.2);

  const std::vector<std::uint64_t> golden{1, 1, 1};
  const ContrastResult g = lubinsky_contrast(golden, kCfg, 2000);
  CHECK(g.min_N == 1);
  CHECK(oracle::rel(g.min_P, oracle::Big(kP[0])) < 1e-30);

  const std::vector<std::uint64_t> silver{2, 2, 2};
  const ContrastResult s = lubinsky_contrast(silver, kCfg, 10'000);
  CHECK(s.limit == 10'000);
  CHECK(s.min_P > 0.5);
}

}
