#include "core/envelope.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace poussin {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

double envelope_monotone_from(double amp, double pow, double decay) {
  if (!(amp > 0)) throw DomainError("envelope prefactor must be positive");
  if (!(pow >= 0)) throw DomainError("envelope log power must be nonnegative");
  if (!(decay > 0)) throw DomainError("envelope decay must be positive");
  const double q = decay / 2.0;
  if (pow > 0) {
    const double disc = q * q - 4.0 * pow;
    if (disc <= 0) return 1.0;  // positive for every x > 1
    const double u_plus = (q + std::sqrt(disc)) / 2.0;
    return std::exp(u_plus * u_plus);
  }
  return std::exp(q * q);
}

EnvelopeFn EnvelopeFn::make(double amp, double log_pow, double decay) {
  EnvelopeFn e;
  e.amp = amp;
  e.log_pow = log_pow;
  e.decay = decay;
  e.monotone_from = envelope_monotone_from(amp, log_pow, decay);
  return e;
}

double EnvelopeFn::operator()(double x) const {
  const double L = std::log(x);
  const double u = std::sqrt(L);
  const double lp = log_pow == 0.0 ? 1.0 : std::pow(L, log_pow);
  return amp * x * lp * std::exp(-decay * u);
}

ext_real EnvelopeFn::eval_ext(double x) const {
  const ext_real L = log(ext_real(x));
  const ext_real u = sqrt(L);
  const ext_real lp = log_pow == 0.0 ? ext_real(1) : pow(L, ext_real(log_pow));
  return ext_real(amp) * x * lp * exp(-ext_real(decay) * u);
}

double EnvelopeFn::eval_budget(double gx) { return 4.0 * kEps * gx; }

double EnvelopeFn::slope_upper_bound(double lo, double hi) const {
  // g'(x) = (g(x)/x) (1 + pow/ln x - decay / (2 sqrt(ln x))), and
  // g(x)/x = amp F(sqrt(ln x)) with F(u) = u^{2 pow} e^{-decay u}, which
  // peaks at u = 2 pow / decay.
  const double u_lo = std::sqrt(std::log(lo));
  const double u_hi = std::sqrt(std::log(hi));
  double u_star = log_pow > 0 ? 2.0 * log_pow / decay : u_lo;
  u_star = std::min(std::max(u_star, u_lo), u_hi);
  const double f_max =
      (log_pow == 0.0 ? 1.0 : std::pow(u_star * u_star, log_pow)) *
      std::exp(-decay * u_star);
  const double paren_max =
      1.0 + (log_pow > 0 ? log_pow / std::log(lo) : 0.0);
  return amp * f_max * paren_max * (1.0 + 1e-9) + 1e-300;
}

}  // namespace poussin
