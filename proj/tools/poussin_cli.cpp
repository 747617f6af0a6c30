// poussin CLI: derivation, verification, x_star search, minimal-prefactor
// search, and reproduction of the published bound tables as text/CSV/JSON.
// Talks to libpoussin through the C API only.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "poussin/poussin.h"

using ordered_json = nlohmann::ordered_json;

namespace {

// BSD-style exit codes: 64 usage, 65 data out of range, 74 I/O.
constexpr int kExitUsage = 64;
constexpr int kExitRange = 65;
constexpr int kExitIo = 74;
constexpr int kExitInternal = 70;

struct CtxDeleter {
  void operator()(poussin_ctx* c) const { poussin_ctx_free(c); }
};
struct TableDeleter {
  void operator()(poussin_theta_table* t) const { poussin_theta_free(t); }
};
using Ctx = std::unique_ptr<poussin_ctx, CtxDeleter>;
using Table = std::unique_ptr<poussin_theta_table, TableDeleter>;

int status_exit(poussin_status s) {
  switch (s) {
    case POUSSIN_OK: return 0;
    case POUSSIN_ERR_INVALID:
    case POUSSIN_ERR_DOMAIN:
    case POUSSIN_ERR_NOT_FOUND: return kExitUsage;
    case POUSSIN_ERR_RANGE:
    case POUSSIN_ERR_RESOURCE: return kExitRange;
    case POUSSIN_ERR_IO: return kExitIo;
    case POUSSIN_ERR_INCONCLUSIVE: return 2;
    default: return kExitInternal;
  }
}

[[noreturn]] void die(poussin_ctx* ctx, poussin_status s) {
  std::fprintf(stderr, "poussin: %s\n", poussin_last_error(ctx));
  std::exit(status_exit(s));
}

void check(poussin_ctx* ctx, poussin_status s) {
  if (s != POUSSIN_OK) die(ctx, s);
}

std::string fmt(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// numeric CLI arguments accept decimals or "p/q" fractions
double parse_real(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(s.substr(0, slash));
      const double den = std::stod(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return num / den;
    }
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    std::fprintf(stderr, "poussin: cannot parse number '%s'\n", s.c_str());
    std::exit(kExitUsage);
  }
}

struct CommonOpts {
  uint64_t sieve_limit = 100'000'000;
  int threads = 0;
  std::string precision = "fast";
  std::string format = "text";
};

void add_run_options(CLI::App* cmd, CommonOpts& o, bool with_limit = true) {
  if (with_limit)
    cmd->add_option("--sieve-limit", o.sieve_limit,
                    "largest x the theta table may cover (default 10^8)");
  cmd->add_option("--threads", o.threads, "worker threads (0 = auto)");
  cmd->add_option("--precision-policy", o.precision,
                  "fast | rigorous (rigorous escalates every comparison)")
      ->check(CLI::IsMember({"fast", "rigorous"}));
}

void apply_ctx_options(poussin_ctx* ctx, const CommonOpts& o) {
  check(ctx, poussin_ctx_set_threads(ctx, o.threads));
  check(ctx, poussin_ctx_set_rigorous(ctx, o.precision == "rigorous"));
}

// Builds a theta table covering points up to `needed`, within the sieve
// cap; reuses the POUSSIN_CACHE_DIR cache when set.
Table acquire_table(poussin_ctx* ctx, const CommonOpts& o, double needed) {
  if (!(needed >= 2)) {
    std::fprintf(stderr, "poussin: empty or invalid range\n");
    std::exit(kExitUsage);
  }
  const auto wanted = static_cast<uint64_t>(std::ceil(needed));
  if (wanted > o.sieve_limit) {
    std::fprintf(stderr,
                 "poussin: range end %" PRIu64
                 " beyond the sieve limit %" PRIu64
                 " (raise --sieve-limit)\n",
                 wanted, o.sieve_limit);
    std::exit(kExitRange);
  }
  const uint64_t limit = std::max<uint64_t>(1024, wanted + 64) > o.sieve_limit
                             ? o.sieve_limit
                             : std::max<uint64_t>(1024, wanted + 64);
  poussin_theta_opts topts{0, o.threads, 0};
  const char* cache = std::getenv("POUSSIN_CACHE_DIR");
  poussin_theta_table* raw = nullptr;
  check(ctx, poussin_theta_build_cached(ctx, limit, &topts, cache, &raw));
  return Table(raw);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f || !(f << text)) {
    std::fprintf(stderr, "poussin: cannot write '%s'\n", out_path.c_str());
    std::exit(kExitIo);
  }
}

// ---- catalog ------------------------------------------------------------

int cmd_catalog(poussin_ctx* ctx, const std::string& format,
                const std::string& out_path) {
  std::string text;
  const size_t n = poussin_catalog_size();
  std::vector<poussin_family> fams(n);
  for (size_t i = 0; i < n; ++i)
    check(ctx, poussin_catalog_get(ctx, i, &fams[i]));
  if (format == "csv") {
    text += "source,a,b,c,x0\n";
    for (const auto& f : fams)
      text += std::string(f.source) + "," + f.a_str + "," + f.b_str + "," +
              f.c_str + "," + f.x0_str + "\n";
  } else if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& f : fams)
      arr.push_back({{"source", f.source},
                     {"a", f.a_str},
                     {"b", f.b_str},
                     {"c", f.c_str},
                     {"x0", f.x0_str}});
    text = arr.dump(2) + "\n";
  } else {
    for (const auto& f : fams) {
      char line[256];
      std::snprintf(line, sizeof line, "%-26s a=%-13s b=%-6s c=%-13s x0=%s\n",
                    f.source, f.a_str, f.b_str, f.c_str, f.x0_str);
      text += line;
    }
  }
  emit(text, out_path);
  return 0;
}

// ---- derive ---------------------------------------------------------------

struct FamilyArgs {
  std::string source, a, b, c;
  double x0 = 2.0;
  bool has_explicit() const { return !a.empty() || !b.empty() || !c.empty(); }
};

poussin_family resolve_family(poussin_ctx* ctx, const FamilyArgs& fa) {
  poussin_family fam;
  if (!fa.source.empty() && fa.has_explicit()) {
    std::fprintf(stderr,
                 "poussin: give either --source or explicit --a/--b/--c\n");
    std::exit(kExitUsage);
  }
  if (!fa.source.empty()) {
    check(ctx, poussin_catalog_find(ctx, fa.source.c_str(), &fam));
    return fam;
  }
  if (fa.a.empty() || fa.b.empty() || fa.c.empty()) {
    std::fprintf(stderr,
                 "poussin: need --source or all of --a, --b, --c\n");
    std::exit(kExitUsage);
  }
  check(ctx, poussin_family_make(ctx, "custom", fa.a.c_str(), fa.b.c_str(),
                                 fa.c.c_str(), fa.x0, &fam));
  return fam;
}

int cmd_derive(poussin_ctx* ctx, const FamilyArgs& fa,
               const std::string& ctilde, const std::string& format) {
  const poussin_family fam = resolve_family(ctx, fa);
  double value = 0.0;
  char full[64], ten[64];
  check(ctx, poussin_derive_prefactor(ctx, &fam, ctilde.c_str(), &value, 30,
                                      full, sizeof full));
  check(ctx, poussin_derive_prefactor(ctx, &fam, ctilde.c_str(), nullptr, 10,
                                      ten, sizeof ten));
  const bool has_peak = fam.b > 0;
  double peak_log = 0.0;
  if (has_peak)
    check(ctx, poussin_peak_exponent(ctx, fam.b, fam.c, parse_real(ctilde),
                                     &peak_log));
  if (format == "json") {
    ordered_json j{{"source", fam.source},
                   {"ctilde", ctilde},
                   {"tilde_a", full},
                   {"tilde_a_10sig", ten},
                   {"x_peak_log", has_peak ? ordered_json(peak_log)
                                           : ordered_json(nullptr)}};
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("source:        %s  (a=%s, b=%s, c=%s, x0=%s)\n", fam.source,
                fam.a_str, fam.b_str, fam.c_str, fam.x0_str);
    std::printf("ctilde:        %s\n", ctilde.c_str());
    std::printf("tilde_a:       %s\n", full);
    std::printf("tilde_a_10sig: %s\n", ten);
    if (has_peak)
      std::printf("x_peak:        exp(%s)\n", fmt(peak_log).c_str());
    else
      std::printf("x_peak:        none (b = 0, the factor is constant)\n");
  }
  return 0;
}

// ---- tables ---------------------------------------------------------------

int cmd_tables(poussin_ctx* ctx, const std::string& which, CommonOpts& o,
               const std::string& out_path) {
  const int w = which == "III" ? 3 : 4;
  const size_t n = poussin_table_size(w);
  Table table;
  if (w == 3) table = acquire_table(ctx, o, 256);

  std::vector<poussin_table_row> rows(n);
  for (size_t i = 0; i < n; ++i)
    check(ctx, poussin_table_compute_row(ctx, w, i, table.get(), &rows[i]));

  std::string text;
  auto x_star_str = [](const poussin_table_row& r) {
    return r.x_star >= 0 ? std::to_string(r.x_star) : std::string();
  };
  if (o.format == "csv") {
    text +=
        "source,ctilde,tilde_a_recomputed,tilde_a_paper,delta,"
        "x_star_recomputed,x_star_paper\n";
    for (const auto& r : rows)
      text += std::string(r.source) + "," + r.ctilde + "," + r.tilde_a_str +
              "," + r.tilde_a_paper_str + "," + fmt(r.delta, 10) + "," +
              x_star_str(r) + "," + r.x_star_paper_str + "\n";
  } else if (o.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j{{"source", r.source},
                     {"ctilde", r.ctilde},
                     {"tilde_a_recomputed", r.tilde_a_str},
                     {"tilde_a_paper", r.tilde_a_paper_str},
                     {"delta", r.delta}};
      j["x_star_recomputed"] =
          r.x_star >= 0 ? ordered_json(r.x_star) : ordered_json(nullptr);
      j["x_star_paper"] = r.x_star_paper_str;
      arr.push_back(j);
    }
    text = arr.dump(2) + "\n";
  } else {
    char line[256];
    std::snprintf(line, sizeof line, "%-26s %-6s %-14s %-12s %-10s %-6s %s\n",
                  "source", "ctilde", "recomputed", "paper", "delta", "x*",
                  "x*_paper");
    text += line;
    for (const auto& r : rows) {
      std::snprintf(line, sizeof line, "%-26s %-6s %-14s %-12s %-10s %-6s %s\n",
                    r.source, r.ctilde, r.tilde_a_str, r.tilde_a_paper_str,
                    fmt(r.delta, 3).c_str(), x_star_str(r).c_str(),
                    r.x_star_paper_str);
      text += line;
    }
  }
  emit(text, out_path);
  return 0;
}

// ---- verify ----------------------------------------------------------------

void print_check_result(const poussin_check_result& r, double lo, double hi,
                        const poussin_envelope& env,
                        const std::string& format) {
  const char* verdict = r.verdict == POUSSIN_HOLDS    ? "Holds"
                        : r.verdict == POUSSIN_FAILS ? "Fails"
                                                      : "Inconclusive";
  if (format == "json") {
    ordered_json j{{"verdict", verdict},
                   {"from", lo},
                   {"to", hi},
                   {"amp", env.amp},
                   {"pow", env.pow},
                   {"decay", env.decay},
                   {"theta_budget", r.theta_budget},
                   {"env_budget", r.env_budget}};
    if (r.verdict == POUSSIN_HOLDS) {
      j["slack"] = r.slack;
      j["touched_limit"] = r.touched_limit != 0;
    } else {
      j["witness_x"] = r.witness_x;
      j["lhs"] = r.lhs;
      j["rhs"] = r.rhs;
    }
    std::printf("%s\n", j.dump(2).c_str());
    return;
  }
  std::printf("verdict: %s\n", verdict);
  std::printf("range:   [%s, %s]\n", fmt(lo).c_str(), fmt(hi).c_str());
  if (env.pow == 0)
    std::printf("bound:   |theta(x) - x| < %s x exp(-%s sqrt(ln x))\n",
                fmt(env.amp).c_str(), fmt(env.decay).c_str());
  else
    std::printf(
        "bound:   |theta(x) - x| < %s x (ln x)^%s exp(-%s sqrt(ln x))\n",
        fmt(env.amp).c_str(), fmt(env.pow).c_str(), fmt(env.decay).c_str());
  if (r.verdict == POUSSIN_HOLDS) {
    std::printf("slack:   %s%s\n", fmt(r.slack).c_str(),
                r.touched_limit ? "  (equality at a right gap limit)" : "");
  } else {
    std::printf("witness: x = %s\n", fmt(r.witness_x).c_str());
    std::printf("         |theta(x) - x| = %s\n", fmt(r.lhs).c_str());
    std::printf("         g(x)           = %s\n", fmt(r.rhs).c_str());
  }
  std::printf("budgets: theta %s, envelope %s\n", fmt(r.theta_budget).c_str(),
              fmt(r.env_budget).c_str());
}

int cmd_verify(poussin_ctx* ctx, const FamilyArgs& fa,
               const std::string& tilde_a, const std::string& tilde_c,
               double lo, double hi, CommonOpts& o) {
  if (!(lo < hi)) {
    std::fprintf(stderr, "poussin: need --from < --to\n");
    return kExitUsage;
  }
  poussin_envelope env{};
  if (!tilde_a.empty() || !tilde_c.empty()) {
    if (tilde_a.empty() || tilde_c.empty() || fa.source.size() ||
        fa.has_explicit()) {
      std::fprintf(stderr,
                   "poussin: give --tilde-a with --tilde-c, or a family "
                   "(--source / --a --b --c), not both\n");
      return kExitUsage;
    }
    env.amp = parse_real(tilde_a);
    env.pow = 0.0;
    env.decay = parse_real(tilde_c);
  } else {
    const poussin_family fam = resolve_family(ctx, fa);
    if (fam.x0_symbolic) {
      std::fprintf(stderr,
                   "poussin: family '%s' is only valid beyond %s, far "
                   "outside any sieve range\n",
                   fam.source, fam.x0_str);
      return kExitRange;
    }
    env.amp = fam.a;
    env.pow = fam.b;
    env.decay = fam.c;
  }
  apply_ctx_options(ctx, o);
  Table table = acquire_table(ctx, o, hi);
  poussin_check_result r{};
  check(ctx, poussin_check_range(ctx, table.get(), &env, lo, hi, &r));
  print_check_result(r, lo, hi, env, o.format);
  return r.verdict == POUSSIN_HOLDS ? 0 : r.verdict == POUSSIN_FAILS ? 1 : 2;
}

int cmd_xstar(poussin_ctx* ctx, const std::string& tilde_a,
              const std::string& tilde_c, double x0, CommonOpts& o) {
  poussin_envelope env{parse_real(tilde_a), 0.0, parse_real(tilde_c)};
  apply_ctx_options(ctx, o);
  Table table = acquire_table(ctx, o, x0);
  int64_t x_star = 0;
  int not_extendable = 0;
  check(ctx, poussin_find_x_star(ctx, table.get(), &env, x0, &x_star,
                                 &not_extendable));
  if (o.format == "json") {
    ordered_json j{{"x_star", x_star},
                   {"x0", x0},
                   {"verified_from", x_star},
                   {"verified_to", x0},
                   {"not_extendable", not_extendable != 0},
                   {"amp", env.amp},
                   {"decay", env.decay}};
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("x_star: %" PRId64 "\n", x_star);
    if (not_extendable)
      std::printf("note:   the bound fails immediately below x0 = %s\n",
                  fmt(x0).c_str());
    else
      std::printf("checked: [%" PRId64
                  ", %s] verified; x >= %s holds by the source bound\n",
                  x_star, fmt(x0).c_str(), fmt(x0).c_str());
  }
  return 0;
}

int cmd_min_prefactor(poussin_ctx* ctx, const std::string& tilde_c, double lo,
                      double hi, CommonOpts& o) {
  if (!(lo < hi)) {
    std::fprintf(stderr, "poussin: need --from < --to\n");
    return kExitUsage;
  }
  apply_ctx_options(ctx, o);
  Table table = acquire_table(ctx, o, hi);
  double amp = 0.0;
  check(ctx, poussin_min_prefactor(ctx, table.get(), parse_real(tilde_c), lo,
                                   hi, &amp));
  if (o.format == "json") {
    ordered_json j{{"min_tilde_a", amp},
                   {"decay", parse_real(tilde_c)},
                   {"from", lo},
                   {"to", hi}};
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("min_tilde_a: %s\n", fmt(amp).c_str());
    std::printf("guarantee:   Holds on [%s, %s] at this prefactor\n",
                fmt(lo).c_str(), fmt(hi).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Ctx ctx(poussin_ctx_new());
  if (!ctx) {
    std::fprintf(stderr, "poussin: out of memory\n");
    return kExitInternal;
  }

  CLI::App app{"effective de la Vallee Poussin bounds on the Chebyshev "
               "theta function"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(poussin_version()));

  // catalog
  auto* c_cat = app.add_subcommand("catalog", "list the built-in bound catalog");
  CommonOpts cat_o;
  std::string cat_out;
  c_cat->add_option("--format", cat_o.format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  c_cat->add_option("--out", cat_out, "write to a file instead of stdout");

  // derive
  auto* c_der = app.add_subcommand(
      "derive", "transform a source bound into the de la Vallee Poussin form");
  FamilyArgs der_fa;
  std::string der_ctilde, der_format = "text";
  c_der->add_option("--source", der_fa.source, "catalog family label");
  c_der->add_option("--a", der_fa.a, "prefactor a (decimal or p/q)");
  c_der->add_option("--b", der_fa.b, "log power b");
  c_der->add_option("--c", der_fa.c, "decay coefficient c");
  c_der->add_option("--x0", der_fa.x0, "validity threshold x0");
  c_der->add_option("--ctilde", der_ctilde, "decay split in (0, c)")
      ->required();
  c_der->add_option("--format", der_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  // tables
  auto* c_tab = app.add_subcommand(
      "tables", "recompute a published derived-bound table");
  std::string tab_which, tab_out;
  CommonOpts tab_o;
  c_tab->add_option("--which", tab_which, "III | IV")
      ->required()
      ->check(CLI::IsMember({"III", "IV"}));
  c_tab->add_option("--format", tab_o.format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  c_tab->add_option("--out", tab_out, "write to a file instead of stdout");
  add_run_options(c_tab, tab_o);

  // verify
  auto* c_ver = app.add_subcommand(
      "verify", "check |theta(x) - x| < g(x) over a range of real x");
  FamilyArgs ver_fa;
  std::string ver_ta, ver_tc;
  double ver_from = 0, ver_to = 0;
  CommonOpts ver_o;
  c_ver->add_option("--tilde-a", ver_ta, "prefactor of the derived form");
  c_ver->add_option("--tilde-c", ver_tc, "decay of the derived form");
  c_ver->add_option("--source", ver_fa.source,
                    "verify a catalog family's full envelope instead");
  c_ver->add_option("--a", ver_fa.a, "explicit generalized prefactor");
  c_ver->add_option("--b", ver_fa.b, "explicit log power");
  c_ver->add_option("--c", ver_fa.c, "explicit decay");
  c_ver->add_option("--x0", ver_fa.x0, "threshold of the explicit family");
  c_ver->add_option("--from", ver_from, "range start")->required();
  c_ver->add_option("--to", ver_to, "range end")->required();
  c_ver->add_option("--format", ver_o.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  add_run_options(c_ver, ver_o);

  // xstar
  auto* c_xs = app.add_subcommand(
      "xstar", "minimal integer threshold of a derived bound");
  std::string xs_ta, xs_tc;
  double xs_x0 = 0;
  CommonOpts xs_o;
  c_xs->add_option("--tilde-a", xs_ta, "prefactor")->required();
  c_xs->add_option("--tilde-c", xs_tc, "decay")->required();
  c_xs->add_option("--x0", xs_x0, "threshold the source bound guarantees")
      ->required();
  c_xs->add_option("--format", xs_o.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  add_run_options(c_xs, xs_o);

  // min-prefactor
  auto* c_mp = app.add_subcommand(
      "min-prefactor", "certified minimal prefactor over a range");
  std::string mp_tc;
  double mp_from = 0, mp_to = 0;
  CommonOpts mp_o;
  c_mp->add_option("--tilde-c", mp_tc, "decay")->required();
  c_mp->add_option("--from", mp_from, "range start")->required();
  c_mp->add_option("--to", mp_to, "range end")->required();
  c_mp->add_option("--format", mp_o.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  add_run_options(c_mp, mp_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (c_cat->parsed()) return cmd_catalog(ctx.get(), cat_o.format, cat_out);
  if (c_der->parsed())
    return cmd_derive(ctx.get(), der_fa, der_ctilde, der_format);
  if (c_tab->parsed()) return cmd_tables(ctx.get(), tab_which, tab_o, tab_out);
  if (c_ver->parsed())
    return cmd_verify(ctx.get(), ver_fa, ver_ta, ver_tc, ver_from, ver_to,
                      ver_o);
  if (c_xs->parsed()) return cmd_xstar(ctx.get(), xs_ta, xs_tc, xs_x0, xs_o);
  if (c_mp->parsed())
    return cmd_min_prefactor(ctx.get(), mp_tc, mp_from, mp_to, mp_o);
  return kExitUsage;
}
