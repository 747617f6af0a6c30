#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>

namespace poussin {

// Working type for everything that must be carried beyond 64-bit precision:
// catalog constants, lemma arithmetic, and escalated verification comparisons.
// 50 significant decimal digits.
using ext_real = boost::multiprecision::cpp_bin_float_50;

// %.Ng-style formatting (N significant digits, fixed/scientific chosen
// automatically).
std::string format_sig(const ext_real& v, int digits);
std::string format_sig(double v, int digits);

// Parses a decimal literal or a "p/q" fraction ("1/3" stays exact to 50
// digits instead of collapsing to a double first).
ext_real parse_ext(const std::string& text);

inline double to_double(const ext_real& v) { return v.convert_to<double>(); }

}  // namespace poussin
