#pragma once

#include <cstdint>
#include <limits>

#include "core/bounds.hpp"
#include "core/envelope.hpp"
#include "core/theta.hpp"

namespace poussin {

enum class Verdict { Holds, Fails, Inconclusive };

// Result of a range verification. Fails carries a witness with
// |theta(w) - w| >= g(w) by a margin beyond the error budget; Inconclusive
// means some comparison stayed inside the budget even at extended precision.
struct CheckOutcome {
  Verdict status = Verdict::Holds;
  double witness_x = 0.0;  // Fails / Inconclusive
  double lhs = 0.0;        // |theta - x| at the witness
  double rhs = 0.0;        // g at the witness
  // Holds: certified lower bound on min over the range of g(x) - |theta(x)-x|
  double slack = std::numeric_limits<double>::infinity();
  double theta_budget = 0.0;  // budgets at the decisive comparison
  double env_budget = 0.0;
  bool touched_limit = false;  // equality accepted at a right gap limit
  uint64_t escalations = 0;    // diagnostics only; not part of the verdict

  bool holds() const { return status == Verdict::Holds; }
};

struct VerifyOptions {
  int threads = 0;        // 0 = hardware concurrency
  bool rigorous = false;  // escalate every comparison to extended precision
};

struct XStarResult {
  int64_t x_star = 2;
  bool not_extendable = false;  // the bound fails immediately below x0
  double verified_lo = 0.0;     // the range actually checked, [x_star, x0]
  double verified_hi = 0.0;
};

// Range verification of |theta(x) - x| < g(x) over real x, exploiting the
// step structure of theta: within a prime gap the surplus side is checked
// exactly at the left endpoint and the deficit side by an endpoint rule
// (when g' < 1 is certified) or adaptive bisection. Comparisons closer than
// the combined error budget are escalated to 50-digit arithmetic; ties
// tighter than 1e-25 relative come back Inconclusive rather than guessed.
class Verifier {
 public:
  Verifier(const ThetaTable& table, const ExtendedThetaOracle& oracle,
           VerifyOptions opts = {});

  // Decides |theta(x) - x| < g(x) for all real x in [lo, hi].
  // Requires max(2, env.monotone_from) <= lo < hi <= table limit.
  CheckOutcome check_range(const EnvelopeFn& env, double lo, double hi) const;

  // Smallest integer m >= 2 with the bound holding on all real x in [m, x0]
  // (the caller asserts validity for x >= x0). Walks down gap by gap from x0
  // and refines to the integer boundary. Throws InconclusiveError when a
  // verdict cannot be rendered.
  XStarResult find_x_star(const EnvelopeFn& env, double x0) const;

  // Certified minimal prefactor: binary search over amp to relative
  // tolerance 1e-9; the returned value itself verifiably Holds on the range.
  double min_prefactor(double tilde_c, double lo, double hi) const;

  // check_range with the full (a, b, c) envelope of a source family.
  CheckOutcome verify_parent(const BoundFamily& family, double lo,
                             double hi) const;

 private:
  const ThetaTable& table_;
  const ExtendedThetaOracle& oracle_;
  VerifyOptions opts_;
};

}  // namespace poussin
