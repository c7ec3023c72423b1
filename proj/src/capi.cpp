#include "sudler/sudler.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <string>

#include "sudler/decomposition.hpp"
#include "sudler/error.hpp"
#include "sudler/harness.hpp"
#include "sudler/numtheory.hpp"
#include "sudler/reports.hpp"
#include "sudler/sudler_core.hpp"

struct sudler_context {
  sudler::PrecisionConfig cfg;
  std::string alpha_spec = "golden";
  sudler::Real alpha;
  std::uint64_t seed = sudler::kDefaultSeed;
  std::string last_error;
};

struct sudler_value {
  std::uint64_t terms = 0;
  double p = 0.0;
  double log = 0.0;
  std::string p_str, log_str, err_str;
};

struct sudler_decomposition {
  std::string fields[7];
  double residual = 0.0;
};

struct sudler_report {
  sudler::Report report;
};

namespace {

sudler_status to_status(sudler::ErrorCode code) { return static_cast<sudler_status>(static_cast<int>(code)); }

// Runs f, translating exceptions into a status and recording the message.
template <class F>
sudler_status guarded(sudler_context* ctx, F&& f) {
  if (ctx != nullptr) ctx->last_error.clear();
  try {
    f();
    return SUDLER_OK;
  } catch (const sudler::Error& e) {
    if (ctx != nullptr) ctx->last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    if (ctx != nullptr) ctx->last_error = "out of memory";
    return SUDLER_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    if (ctx != nullptr) ctx->last_error = e.what();
    return SUDLER_INTERNAL;
  }
}

int digits(const sudler::PrecisionConfig& cfg) { return static_cast<int>(sudler::CsvSink::digits_for(cfg.bits)); }

sudler::Real parse_eps(const char* eps, const sudler::PrecisionConfig& cfg) {
  if (eps == nullptr || *eps == '\0') return sudler::Real(cfg.bits);
  return sudler::Real::parse(eps, cfg.bits);
}

sudler_value* make_value(const sudler::SudlerValue& v, const sudler::PrecisionConfig& cfg) {
  auto* out = new sudler_value;
  out->terms = v.n_terms;
  out->p = v.value.to_double();
  out->log = v.log_value.to_double();
  out->p_str = v.value.to_string(digits(cfg));
  out->log_str = v.log_value.to_string(digits(cfg));
  out->err_str = v.err_bound.to_string(3);
  return out;
}

}  // namespace

extern "C" {

const char* sudler_status_name(sudler_status status) {
  switch (status) {
    case SUDLER_OK: return "ok";
    case SUDLER_BUFFER_TOO_SMALL: return "buffer_too_small";
    case SUDLER_NULL_POINTER: return "null_pointer";
    case SUDLER_OUT_OF_MEMORY: return "out_of_memory";
    case SUDLER_INTERNAL: return "internal";
    default:
      if (status >= SUDLER_INVALID_ARGUMENT && status <= SUDLER_IO) {
        return sudler::error_code_name(static_cast<sudler::ErrorCode>(status));
      }
      return "unknown";
  }
}

namespace {

// alpha and eps are parsed with at least 128 bits: the fast path keeps a
// 128-bit phase, and seeding it from a double shifts factor r by r * 2^-53.
sudler::PrecisionConfig input_config(const sudler::PrecisionConfig& cfg) {
  return sudler::PrecisionConfig(std::max(cfg.bits, sudler::kDefaultBits));
}

}  // namespace

const char* sudler_version(void) { return "0.1.0"; }

sudler_status sudler_context_create(unsigned bits, sudler_context** out) {
  if (out == nullptr) return SUDLER_NULL_POINTER;
  *out = nullptr;
  return guarded(nullptr, [&] {
    sudler::PrecisionConfig cfg(bits);
    auto* ctx = new sudler_context{cfg, "golden", sudler::const_phi(input_config(cfg)), sudler::kDefaultSeed, {}};
    *out = ctx;
  });
}

void sudler_context_destroy(sudler_context* ctx) { delete ctx; }

sudler_status sudler_set_alpha(sudler_context* ctx, const char* spec) {
  if (ctx == nullptr || spec == nullptr) return SUDLER_NULL_POINTER;
  return guarded(ctx, [&] {
    ctx->alpha = sudler::parse_alpha(spec, input_config(ctx->cfg));
    ctx->alpha_spec = spec;
  });
}

sudler_status sudler_set_seed(sudler_context* ctx, uint64_t seed) {
  if (ctx == nullptr) return SUDLER_NULL_POINTER;
  ctx->seed = seed;
  return SUDLER_OK;
}

unsigned sudler_precision(const sudler_context* ctx) { return ctx != nullptr ? ctx->cfg.bits : 0; }

const char* sudler_last_error(const sudler_context* ctx) { return ctx != nullptr ? ctx->last_error.c_str() : ""; }

sudler_status sudler_eval(sudler_context* ctx, uint64_t n, const char* eps, sudler_value** out) {
  if (ctx == nullptr || out == nullptr) return SUDLER_NULL_POINTER;
  *out = nullptr;
  return guarded(ctx, [&] {
    const sudler::Real e = parse_eps(eps, input_config(ctx->cfg));
    *out = make_value(sudler::eval_shifted(ctx->alpha, n, e, ctx->cfg), ctx->cfg);
  });
}

sudler_status sudler_eval_blockwise(sudler_context* ctx, uint64_t n, sudler_value** out) {
  if (ctx == nullptr || out == nullptr) return SUDLER_NULL_POINTER;
  *out = nullptr;
  return guarded(ctx, [&] {
    if (ctx->alpha_spec != "golden") {
      throw sudler::Error(sudler::ErrorCode::invalid_argument, "blockwise evaluation needs alpha = golden");
    }
    *out = make_value(sudler::blockwise_eval(n, ctx->cfg), ctx->cfg);
  });
}

uint64_t sudler_value_terms(const sudler_value* v) { return v != nullptr ? v->terms : 0; }
double sudler_value_p(const sudler_value* v) { return v != nullptr ? v->p : 0.0; }
double sudler_value_log(const sudler_value* v) { return v != nullptr ? v->log : 0.0; }
const char* sudler_value_p_str(const sudler_value* v) { return v != nullptr ? v->p_str.c_str() : ""; }
const char* sudler_value_log_str(const sudler_value* v) { return v != nullptr ? v->log_str.c_str() : ""; }
const char* sudler_value_err_str(const sudler_value* v) { return v != nullptr ? v->err_str.c_str() : ""; }
void sudler_value_destroy(sudler_value* v) { delete v; }

sudler_status sudler_zeckendorf(const char* n, unsigned* indices, size_t cap, size_t* len) {
  if (n == nullptr || len == nullptr || (cap > 0 && indices == nullptr)) return SUDLER_NULL_POINTER;
  std::optional<sudler::Zeckendorf> z;
  const sudler_status st = guarded(nullptr, [&] {
    sudler::BigInt value;
    if (value.set_str(n, 10) != 0 || value < 1) {
      throw sudler::Error(sudler::ErrorCode::invalid_argument, "N must be a positive decimal integer");
    }
    z = sudler::zeckendorf(value);
  });
  if (st != SUDLER_OK) return st;
  *len = z->size();
  if (cap < z->size()) return SUDLER_BUFFER_TOO_SMALL;
  std::copy(z->indices().begin(), z->indices().end(), indices);
  return SUDLER_OK;
}

sudler_status sudler_decompose(sudler_context* ctx, unsigned n, const char* eps, sudler_decomposition** out) {
  if (ctx == nullptr || out == nullptr) return SUDLER_NULL_POINTER;
  *out = nullptr;
  return guarded(ctx, [&] {
    const sudler::DecompositionResult d = sudler::verify_identity(n, parse_eps(eps, ctx->cfg), ctx->cfg);
    auto* r = new sudler_decomposition;
    const int dg = digits(ctx->cfg);
    r->fields[SUDLER_DECOMP_EPS] = d.eps.to_string(dg);
    r->fields[SUDLER_DECOMP_A] = d.A.to_string(dg);
    r->fields[SUDLER_DECOMP_B] = d.B.to_string(dg);
    r->fields[SUDLER_DECOMP_C] = d.C.to_string(dg);
    r->fields[SUDLER_DECOMP_RECOMBINED] = d.recombined.to_string(dg);
    r->fields[SUDLER_DECOMP_DIRECT] = d.direct.to_string(dg);
    r->fields[SUDLER_DECOMP_RESIDUAL] = d.residual.to_string(3);
    r->residual = d.residual.to_double();
    *out = r;
  });
}

const char* sudler_decomposition_str(const sudler_decomposition* d, sudler_decomp_field field) {
  if (d == nullptr || field < SUDLER_DECOMP_EPS || field > SUDLER_DECOMP_RESIDUAL) return "";
  return d->fields[field].c_str();
}

double sudler_decomposition_residual(const sudler_decomposition* d) { return d != nullptr ? d->residual : 0.0; }
void sudler_decomposition_destroy(sudler_decomposition* d) { delete d; }

sudler_status sudler_scan(sudler_context* ctx, uint64_t from, uint64_t to, unsigned flags, const char* csv_path,
                          sudler_record_fn fn, void* user, sudler_scan_summary* out) {
  if (ctx == nullptr || out == nullptr) return SUDLER_NULL_POINTER;
  return guarded(ctx, [&] {
    const sudler::PrecisionConfig cfg = (flags & SUDLER_SCAN_FAST) != 0 ? sudler::PrecisionConfig(sudler::kFastBits)
                                                                         : ctx->cfg;
    const sudler::Real& alpha = ctx->alpha;
    std::ofstream file;
    std::optional<sudler::CsvSink> sink;
    if (csv_path != nullptr) {
      file.open(csv_path, std::ios::out | std::ios::trunc);
      if (!file) throw sudler::Error(sudler::ErrorCode::io, std::string("cannot open ") + csv_path);
      sink.emplace(file, cfg.bits);
    }
    sudler::ScanOptions opts;
    opts.recheck = (flags & SUDLER_SCAN_NO_RECHECK) == 0;
    opts.recheck_bits = std::max(ctx->cfg.bits, sudler::kDefaultBits);
    opts.csv = sink ? &*sink : nullptr;
    if (fn != nullptr) {
      opts.on_record = [fn, user](const sudler::ScanRecord& r) {
        const sudler_record rec{r.N, r.logP.to_double(), r.P.to_double(), r.m, r.is_min ? 1 : 0, r.is_max ? 1 : 0};
        fn(&rec, user);
      };
    }
    const sudler::ScanSummary s = sudler::scan(alpha, from, to, cfg, opts);
    if (file.is_open()) {
      file.close();
      if (!file) throw sudler::Error(sudler::ErrorCode::io, std::string("failed writing ") + csv_path);
    }
    sudler_scan_summary sum{};
    sum.from = s.from;
    sum.to = s.to;
    sum.fast = s.fast ? 1 : 0;
    sum.min_n = s.min_N;
    sum.min_p = s.min_P.to_double();
    sum.min_log = s.min_log.to_double();
    sum.max_n = s.max_N;
    sum.max_p = s.max_P.to_double();
    sum.max_log = s.max_log.to_double();
    sum.rechecks = s.rechecks.size();
    sum.max_recheck_diff = s.max_recheck_diff;
    sum.min_confirmed = s.min_confirmed ? 1 : 0;
    sum.has_growth = s.growth ? 1 : 0;
    if (s.growth) {
      sum.c1_hat = s.growth->C1_hat;
      sum.c2_hat = s.growth->C2_hat;
    }
    const std::string mp = s.min_P.to_string(digits(s.rechecks.empty() ? cfg : ctx->cfg));
    std::snprintf(sum.min_p_str, sizeof sum.min_p_str, "%s", mp.c_str());
    *out = sum;
  });
}

sudler_status sudler_limit(sudler_context* ctx, unsigned n_max, sudler_report** out) {
  if (ctx == nullptr || out == nullptr) return SUDLER_NULL_POINTER;
  *out = nullptr;
  return guarded(ctx, [&] { *out = new sudler_report{sudler::limit_report(n_max, ctx->cfg)}; });
}

sudler_status sudler_verify(sudler_context* ctx, const char* suite, const sudler_verify_options* opts,
                            sudler_report** out) {
  if (ctx == nullptr || suite == nullptr || out == nullptr) return SUDLER_NULL_POINTER;
  *out = nullptr;
  return guarded(ctx, [&] {
    sudler::VerifyOptions vo;
    vo.cfg = ctx->cfg;
    vo.seed = ctx->seed;
    if (opts != nullptr) {
      vo.max_index = opts->max_index;
      vo.samples = opts->samples;
      if (opts->scan_to != 0) vo.scan_to = opts->scan_to;
    }
    *out = new sudler_report{sudler::run_suite(suite, vo)};
  });
}

const char* sudler_report_text(const sudler_report* r) { return r != nullptr ? r->report.text.c_str() : ""; }
const char* sudler_report_csv(const sudler_report* r) { return r != nullptr ? r->report.csv.c_str() : ""; }
int sudler_report_passed(const sudler_report* r) { return r != nullptr && r->report.passed ? 1 : 0; }
void sudler_report_destroy(sudler_report* r) { delete r; }

}  // extern "C"
