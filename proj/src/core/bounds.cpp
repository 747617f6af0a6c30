#include "core/bounds.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace poussin {

std::string format_sig(const ext_real& v, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

ext_real parse_ext(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const ext_real num(text.substr(0, slash));
      const ext_real den(text.substr(slash + 1));
      if (den == 0) throw DomainError("zero denominator in '" + text + "'");
      return num / den;
    }
    return ext_real(text);
  } catch (const std::runtime_error&) {
    throw DomainError("cannot parse real number '" + text + "'");
  }
}

Threshold Threshold::plain(double x) {
  Threshold t;
  t.symbolic_ = false;
  t.value_ = x;
  t.printed_ = format_sig(x, 17);
  // keep integer thresholds as integers in the printed form
  if (x == std::floor(x) && std::abs(x) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", x);
    t.printed_ = buf;
  }
  return t;
}

Threshold Threshold::exp_of(double exponent, std::string printed) {
  Threshold t;
  t.symbolic_ = true;
  t.exponent_ = exponent;
  t.printed_ = std::move(printed);
  return t;
}

double Threshold::value() const {
  if (symbolic_)
    throw DomainError("threshold " + printed_ +
                      " is symbolic and cannot be evaluated");
  return value_;
}

double Threshold::log_value() const {
  return symbolic_ ? exponent_ : std::log(value_);
}

void BoundFamily::validate() const {
  if (!(a > 0)) throw DomainError("prefactor a must be positive");
  if (!(b >= 0)) throw DomainError("log power b must be nonnegative");
  if (!(c > 0)) throw DomainError("decay coefficient c must be positive");
  if (!x0.symbolic() && !(x0.value() >= 2))
    throw DomainError("validity threshold x0 must be at least 2");
}

BoundFamily make_family(const std::string& source, const std::string& a,
                        const std::string& b, const std::string& c,
                        double x0) {
  BoundFamily f;
  f.source = source;
  f.a = parse_ext(a);
  f.b = parse_ext(b);
  f.c = parse_ext(c);
  f.x0 = Threshold::plain(x0);
  f.a_str = a;
  f.b_str = b;
  f.c_str = c;
  f.validate();
  return f;
}

namespace {

BoundFamily restricted(const std::string& a, const std::string& b,
                       const std::string& c, double exponent,
                       const std::string& x0_printed) {
  BoundFamily f;
  f.source = "Johnston-Yang " + x0_printed;
  f.a = parse_ext(a);
  f.b = parse_ext(b);
  f.c = parse_ext(c);
  f.x0 = Threshold::exp_of(exponent, x0_printed);
  f.a_str = a;
  f.b_str = b;
  f.c_str = c;
  return f;
}

std::vector<BoundFamily> build_catalog() {
  std::vector<BoundFamily> v;
  v.push_back(make_family("Schoenfeld", "0.2196138920", "1/4", "0.3219796502", 101));
  v.push_back(make_family("Trudgian", "0.2428127763", "1/4", "0.3935970880", 149));
  v.push_back(make_family("Fiori-Kadiri-Swidinsky", "9.220226", "3/2", "0.8476836", 2));
  v.push_back(make_family("Johnston-Yang", "9.40", "1.515", "0.8274", 2));
  v.push_back(restricted("8.87", "1.514", "0.8288", 3000, "exp(3000)"));
  v.push_back(restricted("8.16", "1.512", "0.8309", 4000, "exp(4000)"));
  v.push_back(restricted("7.66", "1.511", "0.8324", 5000, "exp(5000)"));
  v.push_back(restricted("7.23", "1.510", "0.8335", 6000, "exp(6000)"));
  v.push_back(restricted("7.00", "1.510", "0.8345", 7000, "exp(7000)"));
  v.push_back(restricted("6.79", "1.509", "0.8353", 8000, "exp(8000)"));
  v.push_back(restricted("6.59", "1.509", "0.8359", 9000, "exp(9000)"));
  v.push_back(restricted("6.73", "1.509", "0.8359", 10000, "exp(10000)"));
  v.push_back(restricted("23.14", "1.503", "0.8659", 1e5, "exp(10^5)"));
  v.push_back(restricted("38.58", "1.502", "1.0318", 1e6, "exp(10^6)"));
  v.push_back(restricted("42.91", "1.501", "1.0706", 1e7, "exp(10^7)"));
  v.push_back(restricted("44.42", "1.501", "1.0839", 1e8, "exp(10^8)"));
  v.push_back(restricted("44.98", "1.501", "1.0886", 1e9, "exp(10^9)"));
  v.push_back(restricted("45.18", "1.501", "1.0903", 1e10, "exp(10^10)"));
  return v;
}

}  // namespace

const std::vector<BoundFamily>& catalog() {
  static const std::vector<BoundFamily> entries = build_catalog();
  return entries;
}

const BoundFamily& catalog_find(const std::string& source) {
  for (const auto& f : catalog())
    if (f.source == source) return f;
  throw NotFoundError("no catalog entry named '" + source + "'");
}

ext_real derive_prefactor(const BoundFamily& family, const ext_real& tilde_c) {
  family.validate();
  if (!(tilde_c > 0) || !(tilde_c < family.c))
    throw DomainError("tilde_c must lie strictly between 0 and c = " +
                      family.c_str);
  if (family.b == 0) return family.a;  // the braced factor degenerates to 1
  const ext_real two_b = 2 * family.b;
  return family.a * pow(two_b / (family.c - tilde_c), two_b) * exp(-two_b);
}

double derive_prefactor(const BoundFamily& family, double tilde_c) {
  return to_double(derive_prefactor(family, ext_real(tilde_c)));
}

DerivedBound derive(const BoundFamily& family, const ext_real& tilde_c) {
  DerivedBound d;
  d.tilde_a = derive_prefactor(family, tilde_c);
  d.tilde_c = tilde_c;
  d.parent = family;
  return d;
}

void validate_derived(const DerivedBound& bound) {
  bound.parent.validate();
  if (!(bound.tilde_c > 0) || !(bound.tilde_c < bound.parent.c))
    throw DomainError("derived bound needs 0 < tilde_c < c");
  const ext_real floor_a = derive_prefactor(bound.parent, bound.tilde_c);
  // allow a hair of slop for prefactors round-tripped through decimal text
  if (bound.tilde_a < floor_a * (1 - ext_real("1e-30")))
    throw DomainError("tilde_a below the lemma value " +
                      format_sig(floor_a, 20));
  if (bound.x_star && *bound.x_star < 2)
    throw DomainError("x_star must be at least 2");
}

ext_real peak_exponent(const ext_real& b, const ext_real& c,
                       const ext_real& tilde_c) {
  if (!(b > 0))
    throw DomainError("peak location needs b > 0 (no interior maximum)");
  if (!(tilde_c > 0) || !(tilde_c < c))
    throw DomainError("tilde_c must lie strictly between 0 and c");
  const ext_real r = 2 * b / (c - tilde_c);
  return r * r;
}

double peak_location(double b, double c, double tilde_c) {
  const ext_real q = peak_exponent(ext_real(b), ext_real(c), ext_real(tilde_c));
  if (q > 700) return std::numeric_limits<double>::infinity();
  return std::exp(to_double(q));
}

double solve_decay(const BoundFamily& family, double target_tilde_a) {
  family.validate();
  if (!(family.b > 0))
    throw DomainError("solve_decay needs b > 0 (with b = 0 the prefactor "
                      "does not depend on tilde_c)");
  const ext_real target(target_tilde_a);
  const ext_real two_b = 2 * family.b;
  const ext_real infimum =
      family.a * pow(two_b / family.c, two_b) * exp(-two_b);
  if (!(target > infimum))
    throw RangeError("target prefactor " + format_sig(target, 17) +
                     " at or below the infimum " + format_sig(infimum, 17));

  // derive_prefactor is strictly increasing in tilde_c, so plain bisection.
  ext_real lo = ext_real("1e-9");
  ext_real hi = family.c - ext_real("1e-9");
  if (derive_prefactor(family, lo) >= target) return to_double(lo);
  const ext_real rel_tol("1e-12");
  for (int iter = 0; iter < 200; ++iter) {
    const ext_real mid = (lo + hi) / 2;
    if (derive_prefactor(family, mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= rel_tol * hi) break;
  }
  return to_double((lo + hi) / 2);
}

}  // namespace poussin
