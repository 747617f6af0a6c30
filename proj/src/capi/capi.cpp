// extern "C" surface of libpoussin: opaque handles over the C++ core,
// exceptions mapped to status codes, messages parked on the context.

#include "poussin/poussin.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "core/bounds.hpp"
#include "core/envelope.hpp"
#include "core/errors.hpp"
#include "core/tables.hpp"
#include "core/theta.hpp"
#include "core/verify.hpp"

using namespace poussin;

struct poussin_ctx {
  std::string last_error;
  VerifyOptions vopts;
  uint64_t escalation_cap = 100'000'000;
  std::unique_ptr<ExtendedThetaOracle> oracle;

  ExtendedThetaOracle& get_oracle() {
    if (!oracle || oracle->cap() != escalation_cap)
      oracle = std::make_unique<ExtendedThetaOracle>(escalation_cap,
                                                     vopts.threads);
    return *oracle;
  }
};

struct poussin_theta_table {
  ThetaTable t;
};

namespace {

void put_str(char* dst, size_t cap, const std::string& s) {
  const size_t n = std::min(cap - 1, s.size());
  std::memcpy(dst, s.data(), n);
  dst[n] = '\0';
}

template <class Fn>
poussin_status guarded(poussin_ctx* ctx, Fn&& fn) {
  if (!ctx) return POUSSIN_ERR_INVALID;
  try {
    fn();
    ctx->last_error.clear();
    return POUSSIN_OK;
  } catch (const DomainError& e) {
    ctx->last_error = e.what();
    return POUSSIN_ERR_DOMAIN;
  } catch (const RangeError& e) {
    ctx->last_error = e.what();
    return POUSSIN_ERR_RANGE;
  } catch (const ResourceError& e) {
    ctx->last_error = e.what();
    return POUSSIN_ERR_RESOURCE;
  } catch (const NotFoundError& e) {
    ctx->last_error = e.what();
    return POUSSIN_ERR_NOT_FOUND;
  } catch (const IoError& e) {
    ctx->last_error = e.what();
    return POUSSIN_ERR_IO;
  } catch (const InconclusiveError& e) {
    ctx->last_error = e.what();
    return POUSSIN_ERR_INCONCLUSIVE;
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return POUSSIN_ERR_RESOURCE;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return POUSSIN_ERR_INTERNAL;
  }
}

void fill_family(const BoundFamily& f, poussin_family* out) {
  put_str(out->source, sizeof out->source, f.source);
  out->a = f.a_d();
  out->b = f.b_d();
  out->c = f.c_d();
  out->x0_symbolic = f.x0.symbolic() ? 1 : 0;
  out->x0 = f.x0.symbolic() ? 0.0 : f.x0.value();
  out->x0_exponent = f.x0.log_value();
  put_str(out->a_str, sizeof out->a_str, f.a_str);
  put_str(out->b_str, sizeof out->b_str, f.b_str);
  put_str(out->c_str, sizeof out->c_str, f.c_str);
  put_str(out->x0_str, sizeof out->x0_str, f.x0.str());
}

// Rebuilds the core family from the info struct. Catalog entries are looked
// up by label so symbolic thresholds and exact digits survive the round
// trip; ad-hoc families are reconstructed from their digit strings.
BoundFamily to_family(const poussin_family* f) {
  for (const auto& entry : catalog())
    if (entry.source == f->source) return entry;
  if (f->x0_symbolic)
    throw DomainError("custom families cannot carry symbolic thresholds");
  return make_family(f->source, f->a_str, f->b_str, f->c_str, f->x0);
}

ThetaBuildOptions to_build_opts(const poussin_theta_opts* o) {
  ThetaBuildOptions b;
  if (o) {
    if (o->segment_span) b.segment_span = o->segment_span;
    b.threads = o->threads;
    if (o->mem_budget_bytes) b.mem_budget_bytes = o->mem_budget_bytes;
  }
  return b;
}

EnvelopeFn to_env(const poussin_envelope* e) {
  return EnvelopeFn::make(e->amp, e->pow, e->decay);
}

void fill_result(const CheckOutcome& o, poussin_check_result* out) {
  out->verdict = o.status == Verdict::Holds    ? POUSSIN_HOLDS
                 : o.status == Verdict::Fails ? POUSSIN_FAILS
                                              : POUSSIN_INCONCLUSIVE;
  out->witness_x = o.witness_x;
  out->lhs = o.lhs;
  out->rhs = o.rhs;
  out->slack = o.slack;
  out->theta_budget = o.theta_budget;
  out->env_budget = o.env_budget;
  out->touched_limit = o.touched_limit ? 1 : 0;
}

}  // namespace

extern "C" {

poussin_ctx* poussin_ctx_new(void) { return new (std::nothrow) poussin_ctx; }

void poussin_ctx_free(poussin_ctx* ctx) { delete ctx; }

const char* poussin_last_error(const poussin_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

poussin_status poussin_ctx_set_threads(poussin_ctx* ctx, int threads) {
  return guarded(ctx, [&] {
    if (threads < 0) throw DomainError("thread count must be >= 0");
    ctx->vopts.threads = threads;
  });
}

poussin_status poussin_ctx_set_rigorous(poussin_ctx* ctx, int rigorous) {
  return guarded(ctx, [&] { ctx->vopts.rigorous = rigorous != 0; });
}

poussin_status poussin_ctx_set_escalation_cap(poussin_ctx* ctx, uint64_t cap) {
  return guarded(ctx, [&] {
    if (cap < 2) throw DomainError("escalation cap must be at least 2");
    ctx->escalation_cap = cap;
  });
}

const char* poussin_version(void) { return "1.0.0"; }

size_t poussin_catalog_size(void) { return catalog().size(); }

poussin_status poussin_catalog_get(poussin_ctx* ctx, size_t index,
                                   poussin_family* out) {
  return guarded(ctx, [&] {
    if (!out) throw DomainError("null output");
    if (index >= catalog().size())
      throw RangeError("catalog index out of range");
    fill_family(catalog()[index], out);
  });
}

poussin_status poussin_catalog_find(poussin_ctx* ctx, const char* source,
                                    poussin_family* out) {
  return guarded(ctx, [&] {
    if (!source || !out) throw DomainError("null argument");
    fill_family(catalog_find(source), out);
  });
}

poussin_status poussin_family_make(poussin_ctx* ctx, const char* source,
                                   const char* a, const char* b,
                                   const char* c, double x0,
                                   poussin_family* out) {
  return guarded(ctx, [&] {
    if (!source || !a || !b || !c || !out) throw DomainError("null argument");
    fill_family(make_family(source, a, b, c, x0), out);
  });
}

poussin_status poussin_derive_prefactor(poussin_ctx* ctx,
                                        const poussin_family* family,
                                        const char* tilde_c, double* tilde_a,
                                        int digits, char* str,
                                        size_t str_len) {
  return guarded(ctx, [&] {
    if (!family || !tilde_c) throw DomainError("null argument");
    const ext_real value =
        derive_prefactor(to_family(family), parse_ext(tilde_c));
    if (tilde_a) *tilde_a = to_double(value);
    if (str && str_len > 0)
      put_str(str, str_len, format_sig(value, digits > 0 ? digits : 10));
  });
}

poussin_status poussin_peak_exponent(poussin_ctx* ctx, double b, double c,
                                     double tilde_c, double* exponent) {
  return guarded(ctx, [&] {
    if (!exponent) throw DomainError("null output");
    *exponent = to_double(
        peak_exponent(ext_real(b), ext_real(c), ext_real(tilde_c)));
  });
}

poussin_status poussin_solve_decay(poussin_ctx* ctx,
                                   const poussin_family* family,
                                   double target_tilde_a, double* tilde_c) {
  return guarded(ctx, [&] {
    if (!family || !tilde_c) throw DomainError("null argument");
    *tilde_c = solve_decay(to_family(family), target_tilde_a);
  });
}

poussin_status poussin_theta_build(poussin_ctx* ctx, uint64_t limit,
                                   const poussin_theta_opts* opts,
                                   poussin_theta_table** out) {
  return guarded(ctx, [&] {
    if (!out) throw DomainError("null output");
    auto table = std::make_unique<poussin_theta_table>();
    table->t = build_theta_table(limit, to_build_opts(opts));
    *out = table.release();
  });
}

poussin_status poussin_theta_build_cached(poussin_ctx* ctx, uint64_t limit,
                                          const poussin_theta_opts* opts,
                                          const char* cache_dir,
                                          poussin_theta_table** out) {
  return guarded(ctx, [&] {
    if (!out) throw DomainError("null output");
    auto table = std::make_unique<poussin_theta_table>();
    table->t = load_or_build(limit, to_build_opts(opts),
                             cache_dir ? cache_dir : "");
    *out = table.release();
  });
}

poussin_status poussin_theta_save(poussin_ctx* ctx,
                                  const poussin_theta_table* table,
                                  const char* path) {
  return guarded(ctx, [&] {
    if (!table || !path) throw DomainError("null argument");
    save_theta_table(table->t, path);
  });
}

poussin_status poussin_theta_load(poussin_ctx* ctx, const char* path,
                                  poussin_theta_table** out) {
  return guarded(ctx, [&] {
    if (!path || !out) throw DomainError("null argument");
    auto table = std::make_unique<poussin_theta_table>();
    table->t = load_theta_table(path);
    *out = table.release();
  });
}

void poussin_theta_free(poussin_theta_table* table) { delete table; }

uint64_t poussin_theta_limit(const poussin_theta_table* table) {
  return table ? table->t.limit() : 0;
}

uint64_t poussin_theta_count(const poussin_theta_table* table) {
  return table ? table->t.count() : 0;
}

poussin_status poussin_theta_entry(poussin_ctx* ctx,
                                   const poussin_theta_table* table,
                                   uint64_t index, uint64_t* prime,
                                   double* theta, double* err_budget) {
  return guarded(ctx, [&] {
    if (!table) throw DomainError("null table");
    if (index >= table->t.count()) throw RangeError("entry index out of range");
    if (prime) *prime = table->t.primes()[index];
    if (theta) *theta = table->t.theta()[index];
    if (err_budget) *err_budget = table->t.err_budget()[index];
  });
}

poussin_status poussin_theta_at(poussin_ctx* ctx,
                                const poussin_theta_table* table, double x,
                                double* value, double* err_budget) {
  return guarded(ctx, [&] {
    if (!table) throw DomainError("null table");
    const ThetaValue v = table->t.at(x);
    if (value) *value = v.value;
    if (err_budget) *err_budget = v.err;
  });
}

poussin_status poussin_extended_theta(poussin_ctx* ctx, double x, double* hi,
                                      double* lo) {
  return guarded(ctx, [&] {
    const ext_real v = ctx->get_oracle().theta(x);
    const double h = to_double(v);
    if (hi) *hi = h;
    if (lo) *lo = to_double(v - h);
  });
}

poussin_status poussin_envelope_monotone_from(poussin_ctx* ctx,
                                              const poussin_envelope* env,
                                              double* from) {
  return guarded(ctx, [&] {
    if (!env || !from) throw DomainError("null argument");
    *from = envelope_monotone_from(env->amp, env->pow, env->decay);
  });
}

poussin_status poussin_check_range(poussin_ctx* ctx,
                                   const poussin_theta_table* table,
                                   const poussin_envelope* env, double lo,
                                   double hi, poussin_check_result* out) {
  return guarded(ctx, [&] {
    if (!table || !env || !out) throw DomainError("null argument");
    Verifier v(table->t, ctx->get_oracle(), ctx->vopts);
    fill_result(v.check_range(to_env(env), lo, hi), out);
  });
}

poussin_status poussin_find_x_star(poussin_ctx* ctx,
                                   const poussin_theta_table* table,
                                   const poussin_envelope* env, double x0,
                                   int64_t* x_star, int* not_extendable) {
  return guarded(ctx, [&] {
    if (!table || !env || !x_star) throw DomainError("null argument");
    Verifier v(table->t, ctx->get_oracle(), ctx->vopts);
    const XStarResult r = v.find_x_star(to_env(env), x0);
    *x_star = r.x_star;
    if (not_extendable) *not_extendable = r.not_extendable ? 1 : 0;
  });
}

poussin_status poussin_min_prefactor(poussin_ctx* ctx,
                                     const poussin_theta_table* table,
                                     double tilde_c, double lo, double hi,
                                     double* amp) {
  return guarded(ctx, [&] {
    if (!table || !amp) throw DomainError("null argument");
    Verifier v(table->t, ctx->get_oracle(), ctx->vopts);
    *amp = v.min_prefactor(tilde_c, lo, hi);
  });
}

poussin_status poussin_verify_parent(poussin_ctx* ctx,
                                     const poussin_theta_table* table,
                                     const poussin_family* family, double lo,
                                     double hi, poussin_check_result* out) {
  return guarded(ctx, [&] {
    if (!table || !family || !out) throw DomainError("null argument");
    Verifier v(table->t, ctx->get_oracle(), ctx->vopts);
    fill_result(v.verify_parent(to_family(family), lo, hi), out);
  });
}

size_t poussin_table_size(int which) {
  try {
    return derived_table(which).size();
  } catch (...) {
    return 0;
  }
}

poussin_status poussin_table_compute_row(poussin_ctx* ctx, int which, size_t index,
                                 const poussin_theta_table* table,
                                 poussin_table_row* out) {
  return guarded(ctx, [&] {
    if (!out) throw DomainError("null output");
    DerivedRow row;
    if (table) {
      Verifier v(table->t, ctx->get_oracle(), ctx->vopts);
      row = compute_derived_row(which, index, &v);
    } else {
      row = compute_derived_row(which, index, nullptr);
    }
    put_str(out->source, sizeof out->source, row.source);
    put_str(out->ctilde, sizeof out->ctilde, row.ctilde);
    out->tilde_a = to_double(row.tilde_a);
    put_str(out->tilde_a_str, sizeof out->tilde_a_str, row.tilde_a_str);
    out->tilde_a_paper = row.tilde_a_paper;
    put_str(out->tilde_a_paper_str, sizeof out->tilde_a_paper_str,
            row.tilde_a_paper_str);
    out->delta = row.delta;
    out->x_star = row.x_star;
    put_str(out->x_star_paper_str, sizeof out->x_star_paper_str,
            row.x_star_paper_str);
    out->x_star_paper = row.x_star_paper;
  });
}

}  // extern "C"
