/* poussin -- effective de la Vallee Poussin style bounds on the Chebyshev
 * theta function: catalog, bound transformation, and rigorous range
 * verification.
 *
 * C ABI of libpoussin. All entry points return a poussin_status; results go
 * out through pointers. A poussin_ctx carries the last error message, the
 * verification options, and the extended-precision escalation cache. Handles
 * are opaque; every *_new has a matching *_free.
 */
#ifndef POUSSIN_H
#define POUSSIN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum poussin_status {
  POUSSIN_OK = 0,
  POUSSIN_ERR_INVALID = 1,      /* malformed arguments / null pointers */
  POUSSIN_ERR_DOMAIN = 2,       /* parameter outside its mathematical domain */
  POUSSIN_ERR_RANGE = 3,        /* query outside the verified/sieved range */
  POUSSIN_ERR_RESOURCE = 4,     /* memory budget or escalation cap exceeded */
  POUSSIN_ERR_NOT_FOUND = 5,    /* unknown catalog label */
  POUSSIN_ERR_IO = 6,           /* cache file unreadable or corrupt */
  POUSSIN_ERR_INCONCLUSIVE = 7, /* no verdict even at extended precision */
  POUSSIN_ERR_INTERNAL = 8
} poussin_status;

typedef enum poussin_verdict {
  POUSSIN_HOLDS = 0,
  POUSSIN_FAILS = 1,
  POUSSIN_INCONCLUSIVE = 2
} poussin_verdict;

typedef struct poussin_ctx poussin_ctx;
typedef struct poussin_theta_table poussin_theta_table;

/* ---- context --------------------------------------------------------- */

poussin_ctx* poussin_ctx_new(void);
void poussin_ctx_free(poussin_ctx* ctx);

/* message for the most recent failing call on this context */
const char* poussin_last_error(const poussin_ctx* ctx);

/* 0 = hardware concurrency */
poussin_status poussin_ctx_set_threads(poussin_ctx* ctx, int threads);
/* nonzero: escalate every comparison to extended precision */
poussin_status poussin_ctx_set_rigorous(poussin_ctx* ctx, int rigorous);
/* cap for the extended-precision theta oracle (default 10^8) */
poussin_status poussin_ctx_set_escalation_cap(poussin_ctx* ctx, uint64_t cap);

const char* poussin_version(void);

/* ---- bound catalog ---------------------------------------------------- */

typedef struct poussin_family {
  char source[64];
  double a, b, c; /* |theta(x)-x| < a x (ln x)^b exp(-c sqrt(ln x)) */
  /* threshold: plain value in x0, or x0 = exp(x0_exponent) when symbolic */
  double x0;
  double x0_exponent;
  int x0_symbolic;
  /* digits exactly as published */
  char a_str[32], b_str[32], c_str[32], x0_str[32];
} poussin_family;

size_t poussin_catalog_size(void);
poussin_status poussin_catalog_get(poussin_ctx* ctx, size_t index,
                                   poussin_family* out);
poussin_status poussin_catalog_find(poussin_ctx* ctx, const char* source,
                                    poussin_family* out);
/* family from user constants; a/b/c accept decimals or "p/q" fractions */
poussin_status poussin_family_make(poussin_ctx* ctx, const char* source,
                                   const char* a, const char* b,
                                   const char* c, double x0,
                                   poussin_family* out);

/* ---- bound transformation --------------------------------------------- */

/* tilde_a = a (2b/(c - tilde_c))^(2b) exp(-2b), carried out at 50 decimal
 * digits. tilde_c accepts decimals or fractions ("1/3" stays exact).
 * tilde_a receives the double value; when str/str_len are given, the value
 * is also formatted to `digits` significant digits. */
poussin_status poussin_derive_prefactor(poussin_ctx* ctx,
                                        const poussin_family* family,
                                        const char* tilde_c, double* tilde_a,
                                        int digits, char* str,
                                        size_t str_len);

/* exponent Q with x_peak = exp(Q) where the lemma factor is maximal */
poussin_status poussin_peak_exponent(poussin_ctx* ctx, double b, double c,
                                     double tilde_c, double* exponent);

/* inverse of the prefactor map: the tilde_c in (0, c) reaching the target */
poussin_status poussin_solve_decay(poussin_ctx* ctx,
                                   const poussin_family* family,
                                   double target_tilde_a, double* tilde_c);

/* ---- theta tables ------------------------------------------------------ */

typedef struct poussin_theta_opts {
  uint64_t segment_span;     /* 0 = default (2^21 integers per segment) */
  int threads;               /* 0 = hardware concurrency */
  uint64_t mem_budget_bytes; /* 0 = default (6 GiB) */
} poussin_theta_opts;

poussin_status poussin_theta_build(poussin_ctx* ctx, uint64_t limit,
                                   const poussin_theta_opts* opts,
                                   poussin_theta_table** out);
/* build, or reuse <cache_dir>/theta_<limit>.thet1 when valid */
poussin_status poussin_theta_build_cached(poussin_ctx* ctx, uint64_t limit,
                                          const poussin_theta_opts* opts,
                                          const char* cache_dir,
                                          poussin_theta_table** out);
poussin_status poussin_theta_save(poussin_ctx* ctx,
                                  const poussin_theta_table* table,
                                  const char* path);
poussin_status poussin_theta_load(poussin_ctx* ctx, const char* path,
                                  poussin_theta_table** out);
void poussin_theta_free(poussin_theta_table* table);

uint64_t poussin_theta_limit(const poussin_theta_table* table);
uint64_t poussin_theta_count(const poussin_theta_table* table);
/* k-th prime (0-based) and the theta prefix data at it */
poussin_status poussin_theta_entry(poussin_ctx* ctx,
                                   const poussin_theta_table* table,
                                   uint64_t index, uint64_t* prime,
                                   double* theta, double* err_budget);
/* theta at the largest prime <= x, with its rounding-error budget */
poussin_status poussin_theta_at(poussin_ctx* ctx,
                                const poussin_theta_table* table, double x,
                                double* value, double* err_budget);
/* direct 50-digit recomputation (escalation oracle); hi+lo is a
 * double-double representation accurate to < 1e-30 relative */
poussin_status poussin_extended_theta(poussin_ctx* ctx, double x, double* hi,
                                      double* lo);

/* ---- verification ------------------------------------------------------ */

typedef struct poussin_envelope {
  double amp;   /* tilde_a (or a) */
  double pow;   /* 0 for the de la Vallee Poussin form */
  double decay; /* tilde_c (or c) */
} poussin_envelope;

/* smallest x >= 1 past which the envelope is strictly increasing */
poussin_status poussin_envelope_monotone_from(poussin_ctx* ctx,
                                              const poussin_envelope* env,
                                              double* from);

typedef struct poussin_check_result {
  poussin_verdict verdict;
  double witness_x; /* Fails / Inconclusive */
  double lhs, rhs;  /* |theta - x| and g at the witness */
  double slack;     /* Holds: certified min of g - |theta - x| */
  double theta_budget, env_budget;
  int touched_limit; /* equality accepted at a right gap limit */
} poussin_check_result;

/* decides |theta(x) - x| < g(x) for all real x in [lo, hi] */
poussin_status poussin_check_range(poussin_ctx* ctx,
                                   const poussin_theta_table* table,
                                   const poussin_envelope* env, double lo,
                                   double hi, poussin_check_result* out);

/* least integer m >= 2 with the bound holding on [m, x0]; not_extendable is
 * set when the bound fails immediately below x0 */
poussin_status poussin_find_x_star(poussin_ctx* ctx,
                                   const poussin_theta_table* table,
                                   const poussin_envelope* env, double x0,
                                   int64_t* x_star, int* not_extendable);

/* certified minimal prefactor for exp(-tilde_c sqrt(ln x)) decay on
 * [lo, hi]; the returned value itself verifiably Holds */
poussin_status poussin_min_prefactor(poussin_ctx* ctx,
                                     const poussin_theta_table* table,
                                     double tilde_c, double lo, double hi,
                                     double* amp);

/* range check of a source family's full (a, b, c) envelope */
poussin_status poussin_verify_parent(poussin_ctx* ctx,
                                     const poussin_theta_table* table,
                                     const poussin_family* family, double lo,
                                     double hi, poussin_check_result* out);

/* ---- published derived tables ----------------------------------------- */

typedef struct poussin_table_row {
  char source[64];
  char ctilde[16];
  double tilde_a;                /* recomputed */
  char tilde_a_str[40];          /* 10 significant digits */
  double tilde_a_paper;          /* published value */
  char tilde_a_paper_str[24];
  double delta;                  /* recomputed - published */
  int64_t x_star;                /* recomputed; -1 when not verified */
  char x_star_paper_str[24];
  int64_t x_star_paper;          /* -1 when symbolic */
} poussin_table_row;

/* which = 3 (desk-scale rows) or 4 (restricted-range rows) */
size_t poussin_table_size(int which);
/* recomputes one row into a poussin_table_row; pass a table to re-verify the x_star column (only
 * meaningful for which = 3), or NULL for arithmetic only */
poussin_status poussin_table_compute_row(poussin_ctx* ctx, int which, size_t index,
                                 const poussin_theta_table* table,
                                 poussin_table_row* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* POUSSIN_H */
