#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/extreal.hpp"

namespace poussin {

// Validity threshold of a bound. Either a plain value (101, 149, 2) or a
// symbolic exp(E) with E up to 10^10 -- the latter overflows every hardware
// float format and is therefore never evaluated, only carried around.
class Threshold {
 public:
  static Threshold plain(double x);
  // `printed` keeps the exact source form, e.g. "exp(3000)" or "exp(10^5)".
  static Threshold exp_of(double exponent, std::string printed);

  bool symbolic() const { return symbolic_; }
  double value() const;     // throws DomainError when symbolic
  double log_value() const; // ln x0, finite in both representations
  const std::string& str() const { return printed_; }

 private:
  bool symbolic_ = false;
  double value_ = 2.0;     // plain form
  double exponent_ = 0.0;  // symbolic form: x0 = exp(exponent_)
  std::string printed_;
};

// A source bound |theta(x) - x| < a * x * (ln x)^b * exp(-c sqrt(ln x)),
// valid for x >= x0. Constants are kept both as 50-digit values and as the
// exact digit strings they were defined with.
struct BoundFamily {
  std::string source;
  ext_real a;
  ext_real b;
  ext_real c;
  Threshold x0;
  std::string a_str, b_str, c_str;

  double a_d() const { return to_double(a); }
  double b_d() const { return to_double(b); }
  double c_d() const { return to_double(c); }

  // a > 0, b >= 0, c > 0, x0 >= 2; throws DomainError otherwise.
  void validate() const;
};

// Constructs a family from user-supplied constants (decimal strings or
// "p/q" fractions), validating the invariants.
BoundFamily make_family(const std::string& source, const std::string& a,
                        const std::string& b, const std::string& c, double x0);

// A bound of the de la Vallee Poussin form |theta(x)-x| < ta * x *
// exp(-tc sqrt(ln x)), obtained from `parent` with decay split tc.
struct DerivedBound {
  ext_real tilde_a;
  ext_real tilde_c;
  std::optional<int64_t> x_star;  // set once verified
  BoundFamily parent;
};

// The built-in catalog: 4 widely applicable families plus 14 restricted-range
// families with symbolic thresholds exp(3000) ... exp(10^10). 18 entries,
// digits exactly as published.
const std::vector<BoundFamily>& catalog();
const BoundFamily& catalog_find(const std::string& source);  // NotFoundError

// ta = a * (2b / (c - tc))^(2b) * exp(-2b); the b = 0 limit returns a.
// Requires 0 < tc < c.
ext_real derive_prefactor(const BoundFamily& family, const ext_real& tilde_c);
double derive_prefactor(const BoundFamily& family, double tilde_c);

DerivedBound derive(const BoundFamily& family, const ext_real& tilde_c);

// Checks the DerivedBound invariants: 0 < tilde_c < parent.c and tilde_a at
// least the lemma value (a relaxed prefactor is allowed, a smaller one not).
void validate_derived(const DerivedBound& bound);

// Where the factor (ln x)^b exp(-(c - tc) sqrt(ln x)) attains its maximum:
// x_peak = exp((2b / (c - tc))^2). Requires b > 0 (no interior maximum
// otherwise) and 0 < tc < c.
ext_real peak_exponent(const ext_real& b, const ext_real& c,
                       const ext_real& tilde_c);
// Same as exp(peak_exponent); +inf when the exponent exceeds double range.
double peak_location(double b, double c, double tilde_c);

// Inverse of derive_prefactor in tilde_c: the unique tc in (0, c) with
// derive_prefactor(family, tc) = target. Requires b > 0 and target above the
// tc -> 0 infimum a * (2b/c)^(2b) exp(-2b); throws RangeError at or below it.
// Bisection on [1e-9, c - 1e-9], at most 200 iterations, relative tolerance
// 1e-12.
double solve_decay(const BoundFamily& family, double target_tilde_a);

}  // namespace poussin
