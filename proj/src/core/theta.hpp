#pragma once

#include <cstdint>
#include <limits>
#include <mutex>
#include <string>
#include <vector>

#include "core/extreal.hpp"

namespace poussin {

// theta(x) at some query point, together with a proven bound on the
// accumulated floating-point error: exact theta(x) lies in
// [value - err, value + err].
struct ThetaValue {
  double value = 0.0;
  double err = 0.0;
  double x = 0.0;
};

struct ThetaBuildOptions {
  uint64_t segment_span = uint64_t{1} << 21;  // 2^20 odd candidates
  int threads = 0;                            // 0 = hardware concurrency
  uint64_t mem_budget_bytes = uint64_t{6} << 30;
};

// Primes up to a limit with prefix sums of ln p. theta[k] is the compensated
// sum over primes[0..k]; err_budget[k] bounds |theta[k] - exact| by
// 8 u theta[k] with u the unit roundoff (4 eps in terms of the machine
// epsilon). theta is evaluated between primes as a right-continuous step
// function.
class ThetaTable {
 public:
  uint64_t limit() const { return limit_; }
  size_t count() const { return primes_.size(); }
  const std::vector<uint64_t>& primes() const { return primes_; }
  const std::vector<double>& theta() const { return theta_; }
  const std::vector<double>& err_budget() const { return err_; }

  static constexpr size_t npos = std::numeric_limits<size_t>::max();
  // index of the largest prime <= x, npos when x < 2
  size_t index_of(double x) const;

  // theta at the largest prime <= x (0 below 2). Requires 0 < x <= limit:
  // DomainError for x <= 0, RangeError beyond the limit.
  ThetaValue at(double x) const;
  ThetaValue at_index(size_t k) const;

 private:
  friend ThetaTable build_theta_table(uint64_t, const ThetaBuildOptions&);
  friend ThetaTable load_theta_table(const std::string&);
  uint64_t limit_ = 0;
  std::vector<uint64_t> primes_;
  std::vector<double> theta_;
  std::vector<double> err_;
};

// Segmented sieve + compensated (Neumaier) summation of ln p. Deterministic:
// segments are folded in fixed order, so the result is bit-identical for any
// thread count. ResourceError when the estimated footprint exceeds
// opts.mem_budget_bytes.
ThetaTable build_theta_table(uint64_t limit,
                             const ThetaBuildOptions& opts = {});

// Binary cache: "THET1" magic, limit, count, first prime + u16 gaps, then the
// raw theta/err arrays (little-endian). Loading re-validates the telescoping
// invariant on 1000 sampled entries and throws IoError on any mismatch.
void save_theta_table(const ThetaTable& table, const std::string& path);
ThetaTable load_theta_table(const std::string& path);

// Loads <cache_dir>/theta_<limit>.thet1 when present and valid, otherwise
// builds and (best effort) saves it. Empty cache_dir just builds.
ThetaTable load_or_build(uint64_t limit, const ThetaBuildOptions& opts,
                         const std::string& cache_dir);

// Recomputes theta by direct summation at 50 significant digits; the
// adjudicator for comparisons too close for the 64-bit budget and for
// validating err_budget empirically. Prefix sums at each prime are cached as
// double-double pairs; the relative error of returned values is below 1e-30.
// Lazily grows up to the cap; ResourceError above it.
class ExtendedThetaOracle {
 public:
  explicit ExtendedThetaOracle(uint64_t cap = 100'000'000, int threads = 0);
  ext_real theta(double x) const;
  uint64_t cap() const { return cap_; }
  static double rel_err_bound() { return 1e-30; }

 private:
  void grow(uint64_t need) const;
  uint64_t cap_;
  int threads_;
  mutable std::mutex mu_;
  mutable uint64_t built_to_ = 1;
  mutable ext_real running_{0};
  mutable std::vector<uint64_t> primes_;
  mutable std::vector<double> hi_, lo_;  // double-double prefix sums
};

}  // namespace poussin
