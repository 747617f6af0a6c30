#pragma once

#include "core/extreal.hpp"

namespace poussin {

// Smallest x >= 1 past which g(x) = amp x (ln x)^pow exp(-decay sqrt(ln x))
// is strictly increasing, certified by the sign condition
// ln x + pow - (decay/2) sqrt(ln x) > 0 (a quadratic in sqrt(ln x)).
// For pow = 0 this reduces to exp(decay^2 / 4).
double envelope_monotone_from(double amp, double pow, double decay);

// The right-hand side of a bound, with its monotonicity certificate.
struct EnvelopeFn {
  double amp = 1.0;
  double log_pow = 0.0;
  double decay = 0.25;
  double monotone_from = 2.0;

  static EnvelopeFn make(double amp, double log_pow, double decay);

  double operator()(double x) const;
  ext_real eval_ext(double x) const;

  // evaluation budget: 4 ulp of the computed value
  static double eval_budget(double gx);

  // rigorous upper bound on g'(x) over [lo, hi] (lo > 1); cheap certificate
  // for the endpoint form of the deficit check
  double slope_upper_bound(double lo, double hi) const;
};

}  // namespace poussin
