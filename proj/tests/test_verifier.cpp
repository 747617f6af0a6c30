#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/envelope.hpp"
#include "core/errors.hpp"
#include "core/tables.hpp"
#include "core/theta.hpp"
#include "core/verify.hpp"
#include "support.hpp"

using namespace poussin;

namespace {

struct Fixture {
  ThetaTable table = build_theta_table(1'000'000);
  ExtendedThetaOracle oracle{1'000'000};
  Verifier verifier{table, oracle};
};

Fixture& fx() {
  static Fixture f;
  return f;
}

EnvelopeFn dlvp(double amp, double decay) {
  return EnvelopeFn::make(amp, 0.0, decay);
}

}  // namespace

TEST_CASE("envelope monotonicity certificates") {
  CHECK(envelope_monotone_from(1.0, 0.0, 1.0) ==
        doctest::Approx(std::exp(0.25)).epsilon(1e-15));
  CHECK(envelope_monotone_from(1.0, 0.0, 0.25) ==
        doctest::Approx(std::exp(1.0 / 64.0)).epsilon(1e-15));
  // negative discriminant: increasing for every x > 1
  CHECK(envelope_monotone_from(1.0, 0.25, 0.3219796502) == 1.0);
  CHECK(envelope_monotone_from(1.0, 0.25, 0.3219796502) < 2.0);
  // positive discriminant with pow > 0: threshold at the larger root
  const double m = envelope_monotone_from(1.0, 0.001, 1.0);
  CHECK(m > 1.0);
  const EnvelopeFn e = EnvelopeFn::make(1.0, 0.001, 1.0);
  double prev = e(m);
  for (double x = m * 1.01; x < m * 3; x *= 1.01) {
    CHECK(e(x) > prev);
    prev = e(x);
  }
  CHECK_THROWS_AS(envelope_monotone_from(-1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(envelope_monotone_from(1.0, -0.1, 1.0), DomainError);
  CHECK_THROWS_AS(envelope_monotone_from(1.0, 0.0, 0.0), DomainError);
}

TEST_CASE("envelope evaluation agrees with its extended form") {
  const EnvelopeFn e = EnvelopeFn::make(0.2196138920, 0.25, 0.3219796502);
  for (double x : {2.0, 59.0, 1000.0, 987654.0}) {
    const double g = e(x);
    CHECK(std::abs(g - to_double(e.eval_ext(x))) < 1e-13 * g);
  }
  // the slope certificate really is an upper bound on g'
  const EnvelopeFn f = dlvp(0.5, 0.25);
  for (double x : {2.0, 28.5, 100.0, 5000.0}) {
    const double h = x * 1e-7;
    const double deriv = (f(x + h) - f(x - h)) / (2 * h);
    CHECK(f.slope_upper_bound(x - h, x + h) >= deriv);
  }
}

TEST_CASE("check_range: published clean bound holds on [2, 101]") {
  const CheckOutcome out = fx().verifier.check_range(dlvp(1.0, 0.25), 2, 101);
  REQUIRE(out.status == Verdict::Holds);
  // tightest approach is the limit at the gap [2, 3)
  CHECK(out.slack == doctest::Approx(0.00159537).epsilon(1e-4));
  CHECK(out.slack > 0);
}

TEST_CASE("check_range: halved prefactor fails inside [28, 29)") {
  const CheckOutcome out = fx().verifier.check_range(dlvp(0.5, 0.25), 28, 29);
  REQUIRE(out.status == Verdict::Fails);
  CHECK(out.witness_x >= 28.0);
  CHECK(out.witness_x < 29.0);
  CHECK(out.lhs >= out.rhs);
  // theta is flat on [23, 29), so the witness sees theta(23)
  CHECK(fx().table.at(out.witness_x).value == fx().table.at(23.0).value);
  // witness re-verifies under extended precision
  const ext_real lhs =
      abs(fx().oracle.theta(out.witness_x) - ext_real(out.witness_x));
  CHECK(lhs >= dlvp(0.5, 0.25).eval_ext(out.witness_x));
}

TEST_CASE("check_range: generous prefactor holds with large slack") {
  const CheckOutcome out =
      fx().verifier.check_range(dlvp(10.0, 0.25), 2, 1000);
  REQUIRE(out.status == Verdict::Holds);
  // independent scan of the same range agrees about the minimum slack
  const auto brute = testsupport::brute_check(10.0, 0.0, 0.25, 2, 1000);
  CHECK(brute.holds);
  CHECK(out.slack <= brute.margin * (1 + 1e-9));
  CHECK(out.slack > 5.0);
}

TEST_CASE("check_range rejects malformed ranges") {
  const EnvelopeFn e = dlvp(1.0, 0.25);
  CHECK_THROWS_AS(fx().verifier.check_range(e, 101, 101), RangeError);
  CHECK_THROWS_AS(fx().verifier.check_range(e, 101, 2), RangeError);
  CHECK_THROWS_AS(fx().verifier.check_range(e, 2, 2e6), RangeError);
  CHECK_THROWS_AS(fx().verifier.check_range(e, 1.1, 10), RangeError);
  // below the monotone certification point
  const EnvelopeFn steep = dlvp(1.0, 2.2);  // monotone from exp(1.21) ~ 3.35
  CHECK_THROWS_AS(fx().verifier.check_range(steep, 2, 100), RangeError);
}

TEST_CASE("verdicts are monotone in the prefactor and the range") {
  const CheckOutcome base = fx().verifier.check_range(dlvp(0.5, 0.25), 29, 149);
  REQUIRE(base.status == Verdict::Holds);
  for (double amp : {0.6, 1.0, 7.5}) {
    CHECK(fx().verifier.check_range(dlvp(amp, 0.25), 29, 149).status ==
          Verdict::Holds);
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(29.0, 149.0);
  for (int i = 0; i < 8; ++i) {
    double a = d(rng), b = d(rng);
    if (a > b) std::swap(a, b);
    if (b - a < 1) b = a + 1;
    CHECK(fx().verifier.check_range(dlvp(0.5, 0.25), a, b).status ==
          Verdict::Holds);
  }
}

TEST_CASE("surplus condition is strict at every prime of a holding range") {
  const EnvelopeFn e = dlvp(1.0, 0.25);
  REQUIRE(fx().verifier.check_range(e, 2, 1000).status == Verdict::Holds);
  const auto& primes = fx().table.primes();
  const auto& theta = fx().table.theta();
  const auto& err = fx().table.err_budget();
  for (size_t k = 0; primes[k] <= 1000; ++k) {
    const double p = static_cast<double>(primes[k]);
    const double g = e(p);
    const double budget = err[k] + EnvelopeFn::eval_budget(g);
    CHECK(theta[k] - p < g - budget);
  }
}

TEST_CASE("oracle equivalence: random derived bounds on [2, 10^4]") {
  ThetaTable table = build_theta_table(10'064);
  ExtendedThetaOracle oracle(10'064);
  Verifier verifier(table, oracle);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> amp_exp(-1.0, 1.0);
  std::uniform_real_distribution<double> decay_d(0.1, 1.0);
  std::uniform_real_distribution<double> point(2.0, 10'000.0);
  int checked = 0;
  for (int i = 0; i < 15; ++i) {
    const double amp = std::pow(3.0, amp_exp(rng));
    const double decay = decay_d(rng);
    double lo = point(rng), hi = point(rng);
    if (lo > hi) std::swap(lo, hi);
    if (hi - lo < 2) hi = lo + 2;
    const EnvelopeFn env = EnvelopeFn::make(amp, 0.0, decay);
    if (env.monotone_from > lo) continue;
    const CheckOutcome out = verifier.check_range(env, lo, hi);
    if (out.status == Verdict::Inconclusive) continue;
    const auto brute =
        testsupport::brute_check(amp, 0.0, decay, lo, hi, 2000);
    if (out.holds() != brute.holds) {
      // the scan can only disagree in a near-touching case
      CHECK(std::abs(brute.margin) <
            64 * (out.theta_budget + out.env_budget));
    }
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("find_x_star reproduces the published thresholds") {
  struct Case {
    double amp, decay, x0;
    int64_t expect;
  };
  const Case cases[] = {
      {0.3510691792, 0.25, 101, 59},        // derived from Schoenfeld
      {0.2748124978, 0.25, 149, 101},       // derived from Trudgian
      {0.4242102935, 1.0 / 3.0, 149, 59},   // derived from Trudgian
      {1.0, 0.25, 101, 2},                  // clean bound
      {1.0, 1.0 / 3.0, 149, 3},             // clean bound
      {0.5, 0.25, 101, 29},                 // trade-off bound
      {0.5, 1.0 / 3.0, 149, 41},            // trade-off bound
  };
  for (const Case& c : cases) {
    const XStarResult r =
        fx().verifier.find_x_star(dlvp(c.amp, c.decay), c.x0);
    CHECK(r.x_star == c.expect);
    CHECK_FALSE(r.not_extendable);
    // postcondition: holds on [m, x0], fails on [m-1, m]
    CHECK(fx().verifier
              .check_range(dlvp(c.amp, c.decay), static_cast<double>(r.x_star),
                           c.x0)
              .status == Verdict::Holds);
    if (r.x_star > 2)
      CHECK(fx().verifier
                .check_range(dlvp(c.amp, c.decay),
                             static_cast<double>(r.x_star - 1),
                             static_cast<double>(r.x_star))
                .status == Verdict::Fails);
  }
}

TEST_CASE("find_x_star edge cases") {
  // x0 = 2: nothing to search
  CHECK(fx().verifier.find_x_star(dlvp(1.0, 0.25), 2).x_star == 2);
  // hopeless prefactor: fails immediately below x0
  const XStarResult r = fx().verifier.find_x_star(dlvp(1e-6, 0.25), 101);
  CHECK(r.not_extendable);
  CHECK(r.x_star == 101);
  // envelope not certified monotone from 2
  CHECK_THROWS_AS(fx().verifier.find_x_star(dlvp(1.0, 2.2), 101), DomainError);
  CHECK_THROWS_AS(fx().verifier.find_x_star(dlvp(1.0, 0.25), 2e6), RangeError);
}

TEST_CASE("min_prefactor certifies the published trade-offs") {
  const double on_29 = fx().verifier.min_prefactor(0.25, 29, 149);
  CHECK(on_29 <= 0.5);
  CHECK(fx().verifier.check_range(dlvp(on_29, 0.25), 29, 149).status ==
        Verdict::Holds);
  const double on_28 = fx().verifier.min_prefactor(0.25, 28, 149);
  CHECK(on_28 > 0.5);
  CHECK(fx().verifier.min_prefactor(0.25, 2, 149) <= 1.0);
  CHECK(fx().verifier.min_prefactor(0.25, 59, 101) <= 0.3510691792);
  CHECK_THROWS_AS(fx().verifier.min_prefactor(3.0, 2, 100), RangeError);
}

TEST_CASE("verify_parent at desk scale") {
  const CheckOutcome s =
      fx().verifier.verify_parent(catalog_find("Schoenfeld"), 101, 1'000'000);
  CHECK(s.status == Verdict::Holds);
  const CheckOutcome t =
      fx().verifier.verify_parent(catalog_find("Trudgian"), 149, 1'000'000);
  CHECK(t.status == Verdict::Holds);

  // a crushed prefactor must fail
  const BoundFamily tiny =
      make_family("tiny", "0.0000002196138920", "1/4", "0.3219796502", 2);
  CHECK(fx().verifier.check_range(
                EnvelopeFn::make(tiny.a_d(), tiny.b_d(), tiny.c_d()), 59, 101)
            .status == Verdict::Fails);

  // symbolic thresholds and ranges below x0 are rejected
  CHECK_THROWS_AS(fx().verifier.verify_parent(
                      catalog_find("Johnston-Yang exp(3000)"), 2, 1000),
                  RangeError);
  CHECK_THROWS_AS(
      fx().verifier.verify_parent(catalog_find("Schoenfeld"), 59, 1000),
      RangeError);
}

TEST_CASE("precision exhaustion surfaces as Inconclusive") {
  // an escalation oracle capped below the range makes rigorous mode unable
  // to render any verdict there
  ThetaTable table = build_theta_table(10'000);
  ExtendedThetaOracle capped(64);
  VerifyOptions opts;
  opts.rigorous = true;
  Verifier v(table, capped, opts);
  const CheckOutcome out = v.check_range(dlvp(1.0, 0.25), 101, 149);
  CHECK(out.status == Verdict::Inconclusive);

  // with a big enough oracle, rigorous mode agrees with the fast path
  ExtendedThetaOracle full(10'000);
  Verifier vr(table, full, opts);
  CHECK(vr.check_range(dlvp(1.0, 0.25), 2, 101).status == Verdict::Holds);
  CHECK(vr.check_range(dlvp(0.5, 0.25), 28, 29).status == Verdict::Fails);
}

TEST_CASE("derived table rows recompute, including x_star") {
  ThetaTable table = build_theta_table(256);
  ExtendedThetaOracle oracle(4096);
  Verifier v(table, oracle);
  REQUIRE(derived_table(3).size() == 5);
  REQUIRE(derived_table(4).size() == 19);
  const int64_t expected_x[] = {59, 101, 59, 2, 2};
  for (size_t i = 0; i < 5; ++i) {
    const DerivedRow row = compute_derived_row(3, i, &v);
    CHECK(row.x_star == expected_x[i]);
    CHECK(row.x_star == row.x_star_paper);
    CHECK(std::abs(row.delta) < 1.0);
  }
  for (size_t i = 0; i < 19; ++i) {
    const DerivedRow row = compute_derived_row(4, i, nullptr);
    CHECK(row.x_star == -1);
    CHECK(row.x_star_paper == -1);
    CHECK(std::abs(std::llround(to_double(row.tilde_a)) - row.tilde_a_paper) <=
          1.0);
  }
  CHECK_THROWS_AS(derived_table(5), DomainError);
  CHECK_THROWS_AS(compute_derived_row(3, 99, nullptr), RangeError);
}
