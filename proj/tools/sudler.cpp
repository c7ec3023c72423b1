// Command-line front end. Links only against the C interface.
//
// Exit codes: 0 success, 1 failed check or evaluation error, 2 usage error.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sudler/sudler.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  unsigned prec = 128;
  std::string alpha = "golden";
  std::uint64_t seed = 12345;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--prec", c.prec, "working precision in bits (>= 53; 53 = double fast path)")
      ->check(CLI::Range(53u, 1u << 20));
  cmd->add_option("--alpha", c.alpha, "golden | dec:<decimal> | cf:<a1,a2,...>");
  cmd->add_option("--seed", c.seed, "seed for sampled checks");
  cmd->add_option("--out", c.out, "write CSV here");
}

struct ContextDeleter {
  void operator()(sudler_context* c) const { sudler_context_destroy(c); }
};
using Context = std::unique_ptr<sudler_context, ContextDeleter>;

// Bad input is a usage error; everything else is a failed evaluation.
int status_exit(sudler_status st) {
  return st == SUDLER_INVALID_ARGUMENT || st == SUDLER_OUT_OF_RANGE ? kExitUsage : kExitFail;
}

int report_error(const sudler_context* ctx, sudler_status st) {
  const char* msg = ctx != nullptr ? sudler_last_error(ctx) : "";
  std::fprintf(stderr, "error (%s): %s\n", sudler_status_name(st), msg);
  return status_exit(st);
}

int open_context(const Common& c, Context& ctx) {
  sudler_context* raw = nullptr;
  sudler_status st = sudler_context_create(c.prec, &raw);
  if (st != SUDLER_OK) return report_error(nullptr, st);
  ctx.reset(raw);
  if ((st = sudler_set_alpha(raw, c.alpha.c_str())) != SUDLER_OK) return report_error(raw, st);
  sudler_set_seed(raw, c.seed);
  return 0;
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream f(path, std::ios::out | std::ios::trunc);
  f << text;
  f.close();
  if (!f) {
    std::fprintf(stderr, "error (io): cannot write %s\n", path.c_str());
    return false;
  }
  return true;
}

int emit_report(sudler_report* rep, const std::string& out) {
  std::fputs(sudler_report_text(rep), stdout);
  const bool passed = sudler_report_passed(rep) != 0;
  const bool wrote = out.empty() || write_file(out, sudler_report_csv(rep));
  sudler_report_destroy(rep);
  return passed && wrote ? 0 : kExitFail;
}

void print_record(const sudler_record* r, void*) {
  if (r->is_min) {
    std::printf("running min  N = %" PRIu64 "  P = %.17g  logP = %.17g  m = %u\n", r->n, r->p, r->log_p, r->m_zeck);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sine products along the golden rotation", "sudler"};
  app.require_subcommand(1);

  Common c_eval, c_zeck, c_dec, c_limit, c_scan, c_verify;

  auto* eval = app.add_subcommand("eval", "P_N(alpha) or P_N(alpha, eps)");
  std::uint64_t eval_n = 0;
  std::string eval_eps;
  eval->add_option("--n", eval_n, "number of factors N >= 1")->required()->check(CLI::PositiveNumber);
  eval->add_option("--eps", eval_eps, "shift as a decimal");
  add_common(eval, c_eval);

  auto* zeck = app.add_subcommand("zeckendorf", "Zeckendorf representation of N");
  std::string zeck_n;
  zeck->add_option("N", zeck_n, "positive integer (any size)")->required();
  add_common(zeck, c_zeck);

  auto* dec = app.add_subcommand("decompose", "A*B*C factorisation of P_{F_n}(phi, eps)");
  unsigned dec_index = 0;
  std::string dec_eps;
  dec->add_option("--index", dec_index, "block index n")->required()->check(CLI::Range(2u, 92u));
  dec->add_option("--eps", dec_eps, "admissible shift (|eps| <= phi^(n+1)) as a decimal");
  add_common(dec, c_dec);

  auto* limit = app.add_subcommand("limit", "P_{F_n}(phi) for n = 2 .. max-index");
  unsigned limit_max = 24;
  limit->add_option("--max-index", limit_max, "largest n (<= 32)")->check(CLI::Range(2u, 32u));
  add_common(limit, c_limit);

  auto* scan = app.add_subcommand("scan", "scan P_N(alpha) over a range of N");
  std::uint64_t scan_from = 1, scan_to = 0;
  bool track_min = false, fast = false, no_recheck = false;
  scan->add_option("--from", scan_from, "first N")->check(CLI::PositiveNumber);
  scan->add_option("--to", scan_to, "last N")->required()->check(CLI::PositiveNumber);
  scan->add_flag("--track-min", track_min, "print every new running minimum");
  scan->add_flag("--fast", fast, "53-bit fast path with precise rechecks of running minima");
  scan->add_flag("--no-recheck", no_recheck, "skip the precise rechecks on the fast path");
  add_common(scan, c_scan);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  unsigned max_index = 0;
  std::uint64_t samples = 0, verify_scan_to = 0;
  verify->add_option("--suite", suite, "decomposition | asymptotics | conjectures | thresholds | all")
      ->check(CLI::IsMember({"decomposition", "asymptotics", "conjectures", "thresholds", "all"}));
  verify->add_option("--max-index", max_index, "largest block index (suite default when omitted)");
  verify->add_option("--samples", samples, "samples per block index (suite default when omitted)");
  verify->add_option("--scan-to", verify_scan_to, "upper end of the minimum scan (default 1000000)");
  add_common(verify, c_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  Context ctx;
  sudler_status st = SUDLER_OK;

  if (*eval) {
    if (int rc = open_context(c_eval, ctx)) return rc;
    sudler_value* v = nullptr;
    st = sudler_eval(ctx.get(), eval_n, eval_eps.empty() ? nullptr : eval_eps.c_str(), &v);
    if (st != SUDLER_OK) return report_error(ctx.get(), st);
    std::printf("N = %" PRIu64 "  P = %s  logP = %s  err_bound = %s\n", eval_n, sudler_value_p_str(v),
                sudler_value_log_str(v), sudler_value_err_str(v));
    sudler_value_destroy(v);
    return 0;
  }

  if (*zeck) {
    std::vector<unsigned> idx(64);
    std::size_t len = 0;
    st = sudler_zeckendorf(zeck_n.c_str(), idx.data(), idx.size(), &len);
    if (st == SUDLER_BUFFER_TOO_SMALL) {
      idx.resize(len);
      st = sudler_zeckendorf(zeck_n.c_str(), idx.data(), idx.size(), &len);
    }
    if (st != SUDLER_OK) {
      std::fprintf(stderr, "error (%s): N must be a positive decimal integer\n", sudler_status_name(st));
      return status_exit(st);
    }
    std::string line = zeck_n + " =";
    for (std::size_t j = 0; j < len; ++j) line += (j == 0 ? " F_" : " + F_") + std::to_string(idx[j]);
    std::puts(line.c_str());
    return 0;
  }

  if (*dec) {
    if (int rc = open_context(c_dec, ctx)) return rc;
    if (c_dec.alpha != "golden") {
      std::fprintf(stderr, "error: decompose is defined for alpha = golden only\n");
      return kExitUsage;
    }
    sudler_decomposition* d = nullptr;
    st = sudler_decompose(ctx.get(), dec_index, dec_eps.empty() ? nullptr : dec_eps.c_str(), &d);
    if (st != SUDLER_OK) return report_error(ctx.get(), st);
    const double bound = c_dec.prec >= 128 ? 1e-18 : std::ldexp(1.0, -static_cast<int>(c_dec.prec) + 20);
    bool ok = sudler_decomposition_residual(d) <= bound;
    std::printf("n          %u\n", dec_index);
    std::printf("eps        %s\n", sudler_decomposition_str(d, SUDLER_DECOMP_EPS));
    std::printf("A          %s\n", sudler_decomposition_str(d, SUDLER_DECOMP_A));
    std::printf("B          %s\n", sudler_decomposition_str(d, SUDLER_DECOMP_B));
    std::printf("C          %s\n", sudler_decomposition_str(d, SUDLER_DECOMP_C));
    std::printf("A*B*C      %s\n", sudler_decomposition_str(d, SUDLER_DECOMP_RECOMBINED));
    std::printf("direct     %s\n", sudler_decomposition_str(d, SUDLER_DECOMP_DIRECT));
    std::printf("residual   %s  (%s, bound %.3g)\n", sudler_decomposition_str(d, SUDLER_DECOMP_RESIDUAL),
                ok ? "PASS" : "FAIL", bound);
    if (!c_dec.out.empty()) {
      std::string csv = "n,eps,A,B,C,recombined,direct,residual\n" + std::to_string(dec_index);
      for (auto f : {SUDLER_DECOMP_EPS, SUDLER_DECOMP_A, SUDLER_DECOMP_B, SUDLER_DECOMP_C, SUDLER_DECOMP_RECOMBINED,
                     SUDLER_DECOMP_DIRECT, SUDLER_DECOMP_RESIDUAL}) {
        csv += ',';
        csv += sudler_decomposition_str(d, f);
      }
      csv += '\n';
      if (!write_file(c_dec.out, csv.c_str())) ok = false;
    }
    sudler_decomposition_destroy(d);
    return ok ? 0 : kExitFail;
  }

  if (*limit) {
    if (int rc = open_context(c_limit, ctx)) return rc;
    sudler_report* rep = nullptr;
    st = sudler_limit(ctx.get(), limit_max, &rep);
    if (st != SUDLER_OK) return report_error(ctx.get(), st);
    return emit_report(rep, c_limit.out);
  }

  if (*scan) {
    if (scan_to < scan_from) {
      std::fprintf(stderr, "error: --to must be >= --from\n");
      return kExitUsage;
    }
    if (int rc = open_context(c_scan, ctx)) return rc;
    unsigned flags = 0;
    if (fast) flags |= SUDLER_SCAN_FAST;
    if (no_recheck) flags |= SUDLER_SCAN_NO_RECHECK;
    sudler_scan_summary sum{};
    st = sudler_scan(ctx.get(), scan_from, scan_to, flags, c_scan.out.empty() ? nullptr : c_scan.out.c_str(),
                     track_min ? print_record : nullptr, nullptr, &sum);
    if (st != SUDLER_OK) return report_error(ctx.get(), st);
    std::printf("scan N = %" PRIu64 " .. %" PRIu64 " (%s, alpha = %s)\n", sum.from, sum.to,
                sum.fast ? "fast path" : "precise", c_scan.alpha.c_str());
    std::printf("min  N = %" PRIu64 "  P = %s\n", sum.min_n, sum.min_p_str);
    std::printf("max  N = %" PRIu64 "  P = %.17g  logP = %.17g\n", sum.max_n, sum.max_p, sum.max_log);
    if (sum.has_growth) std::printf("growth exponents  C1_hat = %.6f  C2_hat = %.6f\n", sum.c1_hat, sum.c2_hat);
    if (sum.fast && sum.rechecks > 0) {
      std::printf("rechecked %" PRIu64 " running-min candidate(s), max |fast - precise| in logP = %.3g (%s)\n",
                  sum.rechecks, sum.max_recheck_diff, sum.min_confirmed ? "confirmed" : "ORDER CHANGED");
    }
    return sum.min_confirmed ? 0 : kExitFail;
  }

  if (*verify) {
    if (c_verify.alpha != "golden") {
      std::fprintf(stderr, "error: the verification suites are defined for alpha = golden only\n");
      return kExitUsage;
    }
    if (int rc = open_context(c_verify, ctx)) return rc;
    sudler_verify_options vo{max_index, samples, verify_scan_to};
    sudler_report* rep = nullptr;
    st = sudler_verify(ctx.get(), suite.c_str(), &vo, &rep);
    if (st != SUDLER_OK) return report_error(ctx.get(), st);
    return emit_report(rep, c_verify.out);
  }
  return kExitUsage;
}
