#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/theta.hpp"
#include "core/verify.hpp"

namespace poussin {

// One row of a published derived-bound table: the source family, the chosen
// decay split, and the published prefactor / threshold to compare against.
struct DerivedRowSpec {
  std::string source;        // catalog label
  std::string ctilde;        // "1/4", "1/3", "1/2", "1"
  std::string tilde_a_paper; // published digits
  std::string x_star_paper;  // "59" or a symbolic "exp(3000)"
};

// Table 3: five widely applicable rows with desk-scale x_star values.
// Table 4: nineteen restricted-range rows (x_star thresholds symbolic).
const std::vector<DerivedRowSpec>& derived_table(int which);

struct DerivedRow {
  std::string source;
  std::string ctilde;
  ext_real tilde_a;                 // recomputed, full precision
  std::string tilde_a_str;          // 10 significant digits
  double tilde_a_paper = 0.0;
  std::string tilde_a_paper_str;
  double delta = 0.0;               // recomputed - published
  int64_t x_star = -1;              // recomputed; -1 when not verified
  std::string x_star_paper_str;
  int64_t x_star_paper = -1;        // -1 when symbolic
};

// Recomputes one row. When `verifier` is non-null and the row's threshold is
// desk scale, the x_star column is re-verified as well.
DerivedRow compute_derived_row(int which, size_t index,
                               const Verifier* verifier);

}  // namespace poussin
