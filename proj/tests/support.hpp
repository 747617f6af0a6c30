#pragma once

// Shared helpers for the test suites: an independent brute-force reference
// for range checks (own primes, own summation), and a tiny popen wrapper for
// driving the CLI binary.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

// Trial-division prime list: deliberately not the library's sieve.
inline std::vector<uint64_t> trial_division_primes(uint64_t n) {
  std::vector<uint64_t> primes;
  for (uint64_t cand = 2; cand <= n; ++cand) {
    bool composite = false;
    for (uint64_t d = 2; d * d <= cand; ++d) {
      if (cand % d == 0) {
        composite = true;
        break;
      }
    }
    if (!composite) primes.push_back(cand);
  }
  return primes;
}

// Reference theta data up to 10^4 (the brute-force scale), built once;
// initialization is thread-safe and the tables are immutable afterwards.
struct BruteTheta {
  std::vector<uint64_t> primes;
  std::vector<long double> theta;
};

inline const BruteTheta& brute_theta() {
  static const BruteTheta bt = [] {
    BruteTheta b;
    b.primes = trial_division_primes(10064);
    long double acc = 0.0L;
    for (uint64_t p : b.primes) {
      acc += logl(static_cast<long double>(p));
      b.theta.push_back(acc);
    }
    return b;
  }();
  return bt;
}

struct BruteResult {
  bool holds = true;
  double witness = 0.0;
  double margin = 0.0;  // g - |theta - x| at the worst probed point
};

// Dense scan reference for |theta(x) - x| < amp x (ln x)^pow e^{-decay u}:
// theta from trial-division primes accumulated in long double, the surplus
// condition probed at every prime left endpoint, the deficit condition at
// `points` equally spaced points per gap plus both gap endpoints.
inline BruteResult brute_check(double amp, double pow_, double decay,
                               double lo, double hi, int points = 10000) {
  const BruteTheta& bt = brute_theta();
  if (hi > static_cast<double>(bt.primes.back()))
    throw std::out_of_range("brute_check only covers [2, 10^4]");

  auto g = [&](long double x) {
    const long double L = logl(x);
    const long double lp = pow_ == 0.0 ? 1.0L : powl(L, (long double)pow_);
    return (long double)amp * x * lp * expl(-(long double)decay * sqrtl(L));
  };

  BruteResult res;
  res.margin = 1e300;
  auto probe = [&](long double x, long double T) {
    const long double m = g(x) - fabsl(T - x);
    if (m < res.margin) {
      res.margin = static_cast<double>(m);
      res.witness = static_cast<double>(x);
    }
    if (m <= 0.0L) res.holds = false;
  };

  // piece boundaries: lo, primes in (lo, hi], hi
  std::vector<long double> bounds{(long double)lo};
  std::vector<long double> tvals;
  long double T = 0.0L;
  size_t k = 0;
  while (k < bt.primes.size() && (long double)bt.primes[k] <= (long double)lo)
    T = bt.theta[k++];
  tvals.push_back(T);
  while (k < bt.primes.size() && (long double)bt.primes[k] <= (long double)hi) {
    bounds.push_back((long double)bt.primes[k]);
    tvals.push_back(bt.theta[k]);
    ++k;
  }
  bounds.push_back((long double)hi);
  tvals.push_back(tvals.back());

  for (size_t i = 0; i + 1 < bounds.size(); ++i) {
    const long double A = bounds[i], B = bounds[i + 1];
    if (A >= B) continue;  // duplicate boundary when hi is itself a prime
    const long double Ti = tvals[i];
    probe(A, Ti);
    for (int j = 1; j <= points; ++j) probe(A + (B - A) * j / (points + 1), Ti);
    probe(nextafterl(B, A), Ti);  // just inside the open right end
  }
  probe((long double)hi, tvals.back());  // hi itself, with the jumped theta
  return res;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

#ifdef POUSSIN_CLI_EXE
inline CliResult run_cli(const std::string& args,
                         const std::string& env_prefix = "") {
  CliResult r;
  const std::string cmd = (env_prefix.empty() ? "" : env_prefix + " ") +
                          std::string(POUSSIN_CLI_EXE) + " " + args + " 2>&1";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  const int rc = pclose(pipe);
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}
#endif

}  // namespace testsupport
