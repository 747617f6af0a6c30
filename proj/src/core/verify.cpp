#include "core/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>
#include <vector>

#include "core/errors.hpp"

namespace poussin {

namespace {

// Comparisons escalate when the margin is below kSafety x the combined
// budget; the factor keeps every non-escalated verdict sound even in the
// worst case of the double-precision envelope evaluation.
constexpr double kSafety = 16.0;
// Extended-precision margins below this (relative) are ties, not verdicts.
constexpr double kExtTol = 1e-25;
constexpr int kMaxDepth = 60;

double next_below(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

struct PieceResult {
  Verdict v = Verdict::Holds;
  double witness = 0.0, lhs = 0.0, rhs = 0.0;
  double slack = std::numeric_limits<double>::infinity();
  double tb = 0.0, eb = 0.0;
  bool touched = false;
  uint64_t escalations = 0;
};

// Verifies one constancy interval of theta: [A, B) for an interior prime
// gap, [A, B] for the final piece, or the single point [A, A]. T is theta
// on the piece (theta at the base prime), bt its error budget.
class PieceChecker {
 public:
  PieceChecker(const EnvelopeFn& env, const ExtendedThetaOracle& oracle,
               bool rigorous, double T, double bt, uint64_t base_prime,
               double A, double B, bool closed)
      : env_(env),
        oracle_(oracle),
        rigorous_(rigorous),
        T_(T),
        bt_(bt),
        base_prime_(base_prime),
        A_(A),
        B_(B),
        closed_(closed) {}

  PieceResult run() {
    PieceResult r;
    r.tb = bt_;
    if (A_ == B_) {
      point_check(r, A_);
      r.escalations = escalations_;
      return r;
    }

    // Surplus side: theta - x decreases while g increases, so the exact
    // check is at the left endpoint.
    const double gA = env_(A_);
    const double ebA = EnvelopeFn::eval_budget(gA);
    if (T_ > A_) {
      switch (less(T_ - A_, gA, ebA)) {
        case Tri::Yes:
          note_slack(r, gA - (T_ - A_));
          break;
        case Tri::No:
          fail(r, A_, T_ - A_, gA, ebA);
          r.escalations = escalations_;
          return r;
        case Tri::Close:
          if (!resolve_ext(r, T_ext_minus(A_), A_, A_, T_ - A_, gA, ebA,
                           /*open_side=*/false)) {
            r.escalations = escalations_;
            return r;
          }
          note_slack(r, std::max(0.0, gA - (T_ - A_)));
          break;
      }
    } else {
      note_slack(r, gA - (A_ - T_));
    }

    deficit_check(r);
    r.escalations = escalations_;
    return r;
  }

 private:
  enum class Tri { Yes, No, Close };
  enum class Ext { Less, GreaterEqual, Tie, Unavailable };

  Tri less(double lhs, double rhs, double env_budget) const {
    if (rigorous_) return Tri::Close;
    const double margin = rhs - lhs;
    const double trigger = kSafety * (bt_ + env_budget);
    if (margin > trigger) return Tri::Yes;
    if (margin < -trigger) return Tri::No;
    return Tri::Close;
  }

  bool ensure_ext() {
    if (ext_state_ == 1) return true;
    if (ext_state_ == 2) return false;
    try {
      T_ext_ = oracle_.theta(static_cast<double>(base_prime_));
      ext_state_ = 1;
      return true;
    } catch (const ResourceError&) {
      ext_state_ = 2;
      return false;
    }
  }

  // lhs constructors for extended comparisons
  struct ExtLhs {
    int kind;  // 0: x - theta, 1: theta - x, 2: |theta - x|
    double x;
  };
  ExtLhs x_minus_T(double x) { return {0, x}; }
  ExtLhs T_ext_minus(double x) { return {1, x}; }
  ExtLhs abs_T_minus(double x) { return {2, x}; }

  Ext ext_less(const ExtLhs& lhs, double env_x) {
    if (!ensure_ext()) return Ext::Unavailable;
    ++escalations_;
    ext_real l;
    switch (lhs.kind) {
      case 0: l = ext_real(lhs.x) - T_ext_; break;
      case 1: l = T_ext_ - ext_real(lhs.x); break;
      default: l = abs(T_ext_ - ext_real(lhs.x)); break;
    }
    const ext_real rhs = env_.eval_ext(env_x);
    const ext_real margin = rhs - l;
    ext_real scale = std::max(abs(l), abs(rhs));
    if (scale < 1e-300) scale = 1e-300;
    if (margin > kExtTol * scale) return Ext::Less;
    if (margin < -kExtTol * scale) return Ext::GreaterEqual;
    return Ext::Tie;
  }

  static void note_slack(PieceResult& r, double s) {
    r.slack = std::min(r.slack, s);
  }

  static void fail(PieceResult& r, double x, double lhs, double rhs,
                   double eb) {
    r.v = Verdict::Fails;
    r.witness = x;
    r.lhs = lhs;
    r.rhs = rhs;
    r.eb = eb;
  }

  static void incon(PieceResult& r, double x, double lhs, double rhs,
                    double eb) {
    r.v = Verdict::Inconclusive;
    r.witness = x;
    r.lhs = lhs;
    r.rhs = rhs;
    r.eb = eb;
  }

  // Runs an extended comparison after a Close; returns true when the piece
  // survives (strictly less), false when r now carries Fails/Inconclusive.
  // open_side: a tie at a right-open limit is acceptable when g' < 1 there.
  bool resolve_ext(PieceResult& r, const ExtLhs& lhs, double env_x,
                   double witness_x, double wl, double wr, double eb,
                   bool open_side) {
    switch (ext_less(lhs, env_x)) {
      case Ext::Less:
        return true;
      case Ext::GreaterEqual:
        fail(r, witness_x, wl, wr, eb);
        return false;
      case Ext::Tie:
        if (open_side) {
          r.touched = true;
          note_slack(r, 0.0);
          return true;
        }
        incon(r, witness_x, wl, wr, eb);
        return false;
      case Ext::Unavailable:
      default:
        incon(r, witness_x, wl, wr, eb);
        return false;
    }
  }

  void point_check(PieceResult& r, double x) {
    const double g = env_(x);
    const double eb = EnvelopeFn::eval_budget(g);
    const double lhs = std::abs(T_ - x);
    switch (less(lhs, g, eb)) {
      case Tri::Yes:
        note_slack(r, g - lhs);
        return;
      case Tri::No:
        fail(r, x, lhs, g, eb);
        return;
      case Tri::Close:
        if (resolve_ext(r, abs_T_minus(x), x, x, lhs, g, eb, false))
          note_slack(r, std::max(0.0, g - lhs));
        return;
    }
  }

  void deficit_check(PieceResult& r) {
    if (B_ <= T_) {
      // theta sits above the whole piece; the surplus check at A covered
      // the sup, only the slack at the right end is worth recording
      note_slack(r, env_(B_) - (T_ - B_));
      return;
    }
    const double gB = env_(B_);
    const double ebB = EnvelopeFn::eval_budget(gB);
    if (env_.slope_upper_bound(A_, B_) < 1.0) {
      // x - T - g(x) strictly increasing: the sup sits at the right end
      // (a limit value when the piece is right-open)
      switch (less(B_ - T_, gB, ebB)) {
        case Tri::Yes:
          note_slack(r, gB - (B_ - T_));
          return;
        case Tri::No:
          if (closed_) {
            fail(r, B_, B_ - T_, gB, ebB);
            return;
          }
          hunt_witness(r);
          return;
        case Tri::Close:
          switch (ext_less(x_minus_T(B_), B_)) {
            case Ext::Less:
              note_slack(r, std::max(0.0, gB - (B_ - T_)));
              return;
            case Ext::GreaterEqual:
              if (closed_) {
                fail(r, B_, B_ - T_, gB, ebB);
                return;
              }
              hunt_witness(r);
              return;
            case Ext::Tie:
              if (closed_) {
                incon(r, B_, B_ - T_, gB, ebB);
                return;
              }
              // the sup of the open piece is never attained; with g' < 1
              // certified, equality in the limit still means strict
              // inequality on [A, B)
              r.touched = true;
              note_slack(r, 0.0);
              return;
            case Ext::Unavailable:
              incon(r, B_, B_ - T_, gB, ebB);
              return;
          }
      }
      return;
    }
    const Sub s = bisect(A_, B_, /*open_v=*/!closed_, 0);
    apply(r, s);
  }

  struct Sub {
    enum Kind { Pass, Fail, Incon } kind = Pass;
    double witness = 0.0, lhs = 0.0, rhs = 0.0, eb = 0.0;
    double slack = std::numeric_limits<double>::infinity();
    bool touched = false;
    static Sub pass(double s, bool touch = false) {
      Sub r;
      r.slack = s;
      r.touched = touch;
      return r;
    }
    static Sub problem(Kind k, double w, double l, double g, double eb) {
      Sub r;
      r.kind = k;
      r.witness = w;
      r.lhs = l;
      r.rhs = g;
      r.eb = eb;
      return r;
    }
  };

  void apply(PieceResult& r, const Sub& s) {
    if (s.kind == Sub::Fail)
      fail(r, s.witness, s.lhs, s.rhs, s.eb);
    else if (s.kind == Sub::Incon)
      incon(r, s.witness, s.lhs, s.rhs, s.eb);
    else {
      note_slack(r, s.slack);
      r.touched = r.touched || s.touched;
    }
  }

  // Probes x against the deficit condition; returns a Fail/Incon Sub when
  // the point itself settles the piece.
  std::optional<Sub> probe(double x) {
    if (x <= T_) return std::nullopt;
    const double g = env_(x);
    const double eb = EnvelopeFn::eval_budget(g);
    switch (less(x - T_, g, eb)) {
      case Tri::Yes:
        return std::nullopt;
      case Tri::No:
        return Sub::problem(Sub::Fail, x, x - T_, g, eb);
      case Tri::Close:
        switch (ext_less(x_minus_T(x), x)) {
          case Ext::Less:
            return std::nullopt;
          case Ext::GreaterEqual:
            return Sub::problem(Sub::Fail, x, x - T_, g, eb);
          case Ext::Tie:
            // exact touch at an included point: the strict bound cannot be
            // certified either way
            return Sub::problem(Sub::Incon, x, x - T_, g, eb);
          case Ext::Unavailable:
            return Sub::problem(Sub::Incon, x, x - T_, g, eb);
        }
    }
    return std::nullopt;
  }

  // The limit condition at a right-open end B was definitely violated, so
  // real points just below B fail; find a representable one.
  void hunt_witness(PieceResult& r) {
    double w = next_below(B_);
    for (int j = 0; j < 8 && w > A_; ++j) {
      const double g = env_(w);
      const double eb = EnvelopeFn::eval_budget(g);
      switch (less(w - T_, g, eb)) {
        case Tri::No:
          fail(r, w, w - T_, g, eb);
          return;
        case Tri::Close:
          if (ext_less(x_minus_T(w), w) == Ext::GreaterEqual) {
            fail(r, w, w - T_, g, eb);
            return;
          }
          break;
        case Tri::Yes:
          break;
      }
      w = next_below(w);
    }
    // the failing reals are squeezed below floating-point resolution
    incon(r, next_below(B_), next_below(B_) - T_, env_(next_below(B_)),
          EnvelopeFn::eval_budget(env_(next_below(B_))));
  }

  Sub bisect(double u, double v, bool open_v, int depth) {
    const double gu = env_(u);
    const double ebu = EnvelopeFn::eval_budget(gu);
    // pass rule: x - T <= v - T < g(u) <= g(x) for every x in [u, v]
    switch (less(v - T_, gu, ebu)) {
      case Tri::Yes:
        return Sub::pass(gu - (v - T_));
      case Tri::Close:
        if (ext_less(x_minus_T(v), u) == Ext::Less)
          return Sub::pass(std::max(0.0, gu - (v - T_)));
        break;
      case Tri::No:
        break;
    }
    if (auto s = probe(u)) return *s;
    if (!open_v) {
      if (auto s = probe(v)) return *s;
    }
    if (depth >= kMaxDepth) {
      const double g = env_(u);
      return Sub::problem(Sub::Incon, u, u - T_, g,
                          EnvelopeFn::eval_budget(g));
    }
    const double mid = u + 0.5 * (v - u);
    if (!(mid > u && mid < v)) return closure(u, v, open_v);
    Sub left = bisect(u, mid, false, depth + 1);
    if (left.kind == Sub::Fail) return left;
    Sub right = bisect(mid, v, open_v, depth + 1);
    if (right.kind == Sub::Fail) return right;
    if (left.kind == Sub::Incon) return left;
    if (right.kind == Sub::Incon) return right;
    return Sub::pass(std::min(left.slack, right.slack),
                     left.touched || right.touched);
  }

  // [u, v] has collapsed to adjacent doubles; any remaining real points are
  // unrepresentable, so decide via the limit value at v.
  Sub closure(double u, double v, bool open_v) {
    const double gv = env_(v);
    const double ebv = EnvelopeFn::eval_budget(gv);
    if (env_.slope_upper_bound(u, v) < 1.0) {
      switch (less(v - T_, gv, ebv)) {
        case Tri::Yes:
          return Sub::pass(gv - (v - T_));
        case Tri::No:
        case Tri::Close:
          switch (ext_less(x_minus_T(v), v)) {
            case Ext::Less:
              return Sub::pass(std::max(0.0, gv - (v - T_)));
            case Ext::GreaterEqual:
              // mathematically failing, but only between representable
              // points; cannot exhibit a witness
              if (!open_v)
                return Sub::problem(Sub::Fail, v, v - T_, gv, ebv);
              return Sub::problem(Sub::Incon, v, v - T_, gv, ebv);
            case Ext::Tie:
              if (open_v) return Sub::pass(0.0, /*touch=*/true);
              return Sub::problem(Sub::Incon, v, v - T_, gv, ebv);
            case Ext::Unavailable:
              return Sub::problem(Sub::Incon, v, v - T_, gv, ebv);
          }
      }
    }
    return Sub::problem(Sub::Incon, u, u - T_, gv, ebv);
  }

  const EnvelopeFn& env_;
  const ExtendedThetaOracle& oracle_;
  bool rigorous_;
  double T_, bt_;
  uint64_t base_prime_;
  double A_, B_;
  bool closed_;
  int ext_state_ = 0;  // 0 unknown, 1 ready, 2 unavailable
  ext_real T_ext_{0};
  uint64_t escalations_ = 0;
};

}  // namespace

Verifier::Verifier(const ThetaTable& table, const ExtendedThetaOracle& oracle,
                   VerifyOptions opts)
    : table_(table), oracle_(oracle), opts_(opts) {}

CheckOutcome Verifier::check_range(const EnvelopeFn& env, double lo,
                                   double hi) const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw RangeError("need a finite range with lo < hi");
  if (hi > static_cast<double>(table_.limit()))
    throw RangeError("range end " + format_sig(hi, 17) +
                     " beyond the sieve limit " +
                     std::to_string(table_.limit()));
  if (lo < 2.0 || lo < env.monotone_from)
    throw RangeError(
        "range start " + format_sig(lo, 17) +
        " below the monotone certification point max(2, " +
        format_sig(env.monotone_from, 6) + ")");

  const size_t k0 = table_.index_of(lo);
  const size_t k1 = table_.index_of(hi);
  const size_t n_pieces = k1 - k0 + 1;
  const auto& primes = table_.primes();
  const auto& theta = table_.theta();
  const auto& err = table_.err_budget();

  auto run_piece = [&](size_t j) {
    const size_t k = k0 + j;
    const double a = j == 0 ? lo : static_cast<double>(primes[k]);
    const double b =
        j + 1 < n_pieces ? static_cast<double>(primes[k + 1]) : hi;
    PieceChecker pc(env, oracle_, opts_.rigorous, theta[k], err[k], primes[k],
                    a, b, j + 1 == n_pieces);
    return pc.run();
  };

  auto finish = [&](const PieceResult* fail_piece,
                    const PieceResult* incon_piece, double slack, bool touched,
                    uint64_t esc) {
    CheckOutcome out;
    out.escalations = esc;
    if (fail_piece) {
      out.status = Verdict::Fails;
      out.witness_x = fail_piece->witness;
      out.lhs = fail_piece->lhs;
      out.rhs = fail_piece->rhs;
      out.theta_budget = fail_piece->tb;
      out.env_budget = fail_piece->eb;
      return out;
    }
    if (incon_piece) {
      out.status = Verdict::Inconclusive;
      out.witness_x = incon_piece->witness;
      out.lhs = incon_piece->lhs;
      out.rhs = incon_piece->rhs;
      out.theta_budget = incon_piece->tb;
      out.env_budget = incon_piece->eb;
      return out;
    }
    out.status = Verdict::Holds;
    out.slack = slack;
    out.touched_limit = touched;
    out.theta_budget = err[k1];
    out.env_budget = EnvelopeFn::eval_budget(env(hi));
    return out;
  };

  unsigned hw = opts_.threads > 0
                    ? static_cast<unsigned>(opts_.threads)
                    : std::max(1u, std::thread::hardware_concurrency());
  constexpr size_t kChunk = 2048;
  if (hw <= 1 || n_pieces < 2 * kChunk) {
    // sequential: earliest failure wins by construction
    std::optional<PieceResult> first_incon;
    double slack = std::numeric_limits<double>::infinity();
    bool touched = false;
    uint64_t esc = 0;
    for (size_t j = 0; j < n_pieces; ++j) {
      PieceResult r = run_piece(j);
      esc += r.escalations;
      if (r.v == Verdict::Fails) return finish(&r, nullptr, 0, false, esc);
      if (r.v == Verdict::Inconclusive && !first_incon) first_incon = r;
      slack = std::min(slack, r.slack);
      touched = touched || r.touched;
    }
    return finish(nullptr, first_incon ? &*first_incon : nullptr, slack,
                  touched, esc);
  }

  struct ChunkResult {
    std::optional<PieceResult> fail, incon;
    double slack = std::numeric_limits<double>::infinity();
    bool touched = false;
    uint64_t esc = 0;
  };
  const size_t n_chunks = (n_pieces + kChunk - 1) / kChunk;
  std::vector<ChunkResult> chunks(n_chunks);
  std::atomic<size_t> next{0};
  std::atomic<size_t> lowest_fail{n_chunks};
  auto worker = [&] {
    for (;;) {
      const size_t ci = next.fetch_add(1);
      if (ci >= n_chunks) return;
      // chunks past an already-failed chunk cannot influence the verdict
      if (ci > lowest_fail.load(std::memory_order_relaxed)) continue;
      ChunkResult& cr = chunks[ci];
      const size_t b = ci * kChunk;
      const size_t e = std::min(n_pieces, b + kChunk);
      for (size_t j = b; j < e; ++j) {
        if (ci > lowest_fail.load(std::memory_order_relaxed)) break;
        PieceResult r = run_piece(j);
        cr.esc += r.escalations;
        if (r.v == Verdict::Fails) {
          cr.fail = r;
          size_t cur = lowest_fail.load();
          while (ci < cur && !lowest_fail.compare_exchange_weak(cur, ci)) {
          }
          break;
        }
        if (r.v == Verdict::Inconclusive && !cr.incon) cr.incon = r;
        cr.slack = std::min(cr.slack, r.slack);
        cr.touched = cr.touched || r.touched;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n_workers = std::min<size_t>(hw, n_chunks);
  pool.reserve(n_workers);
  for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::optional<PieceResult> first_incon;
  double slack = std::numeric_limits<double>::infinity();
  bool touched = false;
  uint64_t esc = 0;
  for (size_t ci = 0; ci < n_chunks; ++ci) {
    esc += chunks[ci].esc;
    if (chunks[ci].fail)
      return finish(&*chunks[ci].fail, nullptr, 0, false, esc);
    if (chunks[ci].incon && !first_incon) first_incon = chunks[ci].incon;
    slack = std::min(slack, chunks[ci].slack);
    touched = touched || chunks[ci].touched;
  }
  return finish(nullptr, first_incon ? &*first_incon : nullptr, slack, touched,
                esc);
}

XStarResult Verifier::find_x_star(const EnvelopeFn& env, double x0) const {
  if (env.monotone_from > 2.0)
    throw DomainError("x_star search needs the envelope monotone from 2 "
                      "(certified only from " +
                      format_sig(env.monotone_from, 6) + ")");
  if (!(x0 >= 2.0)) throw DomainError("x0 must be at least 2");
  if (x0 > static_cast<double>(table_.limit()))
    throw RangeError("x0 beyond the sieve limit " +
                     std::to_string(table_.limit()));

  XStarResult res;
  res.verified_hi = x0;
  if (x0 == 2.0) {
    res.x_star = 2;
    res.verified_lo = 2.0;
    return res;
  }

  auto require_verdict = [&](const CheckOutcome& out) {
    if (out.status == Verdict::Inconclusive)
      throw InconclusiveError("verification inconclusive near x = " +
                                  format_sig(out.witness_x, 17),
                              out.witness_x);
  };

  double hi_cursor = x0;
  for (;;) {
    const size_t k = table_.index_of(next_below(hi_cursor));
    if (k == ThetaTable::npos) {
      res.x_star = 2;
      res.verified_lo = 2.0;
      return res;
    }
    const double lo_b = static_cast<double>(table_.primes()[k]);
    const CheckOutcome out = check_range(env, lo_b, hi_cursor);
    require_verdict(out);
    if (out.holds()) {
      if (lo_b == 2.0) {
        res.x_star = 2;
        res.verified_lo = 2.0;
        return res;
      }
      hi_cursor = lo_b;
      continue;
    }

    // the least integer m with [m, x0] holding lies in (lo_b, ceil(hi_cursor)]
    int64_t lo_i = static_cast<int64_t>(lo_b);
    int64_t hi_i = static_cast<int64_t>(std::ceil(hi_cursor));
    while (hi_i - lo_i > 1) {
      const int64_t mid = lo_i + (hi_i - lo_i) / 2;
      if (static_cast<double>(mid) >= hi_cursor) {
        hi_i = mid;
        continue;
      }
      const CheckOutcome o =
          check_range(env, static_cast<double>(mid), hi_cursor);
      require_verdict(o);
      if (o.holds())
        hi_i = mid;
      else
        lo_i = mid;
    }
    res.x_star = hi_i;
    res.verified_lo = static_cast<double>(hi_i);
    res.not_extendable = static_cast<double>(hi_i) >= x0;
    if (!res.not_extendable && hi_i > 2) {
      // postcondition: the bound must fail on [m-1, m]
      const CheckOutcome confirm = check_range(
          env, static_cast<double>(hi_i - 1), static_cast<double>(hi_i));
      require_verdict(confirm);
      if (confirm.holds())
        throw InconclusiveError(
            "x_star boundary could not be pinned near " + std::to_string(hi_i),
            static_cast<double>(hi_i));
    }
    return res;
  }
}

double Verifier::min_prefactor(double tilde_c, double lo, double hi) const {
  if (!(tilde_c > 0)) throw DomainError("tilde_c must be positive");
  const double mono = envelope_monotone_from(1.0, 0.0, tilde_c);
  if (lo < 2.0 || lo < mono)
    throw RangeError("range start below max(2, exp(tilde_c^2/4)) = " +
                     format_sig(std::max(2.0, mono), 6));

  auto verdict = [&](double amp) {
    return check_range(EnvelopeFn::make(amp, 0.0, tilde_c), lo, hi);
  };

  double a_hi = 1.0;
  int guard = 0;
  while (!verdict(a_hi).holds()) {
    a_hi *= 2.0;
    if (++guard > 80)
      throw InconclusiveError("could not bracket a holding prefactor", lo);
  }
  double a_lo = a_hi / 2.0;
  guard = 0;
  while (verdict(a_lo).holds()) {
    a_hi = a_lo;
    a_lo /= 2.0;
    if (++guard > 100)
      throw InconclusiveError("could not bracket a failing prefactor", lo);
  }
  // binary search; Inconclusive midpoints stay on the failing side so the
  // returned value keeps its one-sided Holds guarantee
  while (a_hi - a_lo > 1e-9 * a_hi) {
    const double mid = 0.5 * (a_lo + a_hi);
    if (verdict(mid).holds())
      a_hi = mid;
    else
      a_lo = mid;
  }
  return a_hi;
}

CheckOutcome Verifier::verify_parent(const BoundFamily& family, double lo,
                                     double hi) const {
  family.validate();
  if (family.x0.symbolic())
    throw RangeError("family '" + family.source +
                     "' is only valid beyond x0 = " + family.x0.str() +
                     ", far outside any sieve range");
  if (lo < family.x0.value())
    throw RangeError("range start below the family threshold x0 = " +
                     family.x0.str());
  const EnvelopeFn env =
      EnvelopeFn::make(family.a_d(), family.b_d(), family.c_d());
  return check_range(env, lo, hi);
}

}  // namespace poussin
