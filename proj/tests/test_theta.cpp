#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "core/errors.hpp"
#include "core/theta.hpp"
#include "support.hpp"

using namespace poussin;

namespace {
// 35-digit reference values (direct extended-precision sums)
constexpr const char* kLn2 = "0.69314718055994530941723212145817657";
constexpr const char* kTheta10 = "5.3471075307174686805185894350500696";
constexpr const char* kTheta100 = "83.7283903990639229450269228498791";

double ulp_of(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity()) - x;
}
}  // namespace

TEST_CASE("small tables match direct extended-precision sums") {
  const ThetaTable t10 = build_theta_table(10);
  REQUIRE(t10.count() == 4);
  CHECK(t10.primes() == std::vector<uint64_t>{2, 3, 5, 7});
  CHECK(std::abs(t10.theta()[3] - to_double(parse_ext(kTheta10))) <=
        t10.err_budget()[3]);

  const ThetaTable t2 = build_theta_table(2);
  REQUIRE(t2.count() == 1);
  CHECK(t2.theta()[0] == std::log(2.0));
  CHECK(std::abs(t2.theta()[0] - to_double(parse_ext(kLn2))) <=
        t2.err_budget()[0]);

  const ThetaTable t100 = build_theta_table(100);
  REQUIRE(t100.count() == 25);
  CHECK(std::abs(t100.theta()[24] - to_double(parse_ext(kTheta100))) <=
        t100.err_budget()[24]);
}

TEST_CASE("theta_at is the right-continuous step function") {
  const ThetaTable t = build_theta_table(100);
  CHECK(t.at(1.5).value == 0.0);
  CHECK(t.at(1.5).err == 0.0);
  const double ln210 = to_double(parse_ext(kTheta10));
  CHECK(t.at(10.0).value == doctest::Approx(ln210).epsilon(1e-15));
  // the jump at a prime is included
  CHECK(t.at(7.0).value == t.at(10.0).value);
  CHECK(t.at(std::nextafter(7.0, 0.0)).value ==
        doctest::Approx(std::log(2.) + std::log(3.) + std::log(5.)));
  CHECK_THROWS_AS(t.at(101.0), RangeError);
  CHECK_THROWS_AS(t.at(0.0), DomainError);
  CHECK_THROWS_AS(t.at(-3.0), DomainError);
  CHECK_THROWS_AS(build_theta_table(1), DomainError);
}

TEST_CASE("prime counts against an independent trial-division oracle") {
  const ThetaTable t = build_theta_table(1'000'000);
  const auto oracle = testsupport::trial_division_primes(1'000'000);
  const uint64_t checkpoints[] = {10, 100, 1000, 10'000, 100'000, 1'000'000};
  for (uint64_t cp : checkpoints) {
    const size_t expected =
        std::upper_bound(oracle.begin(), oracle.end(), cp) - oracle.begin();
    const size_t got = t.index_of(static_cast<double>(cp)) + 1;
    CHECK(got == expected);
  }
  REQUIRE(t.count() == oracle.size());
  CHECK(std::equal(oracle.begin(), oracle.end(), t.primes().begin()));
}

TEST_CASE("telescoping: consecutive entries differ by ln p within 4 ulp") {
  const ThetaTable t = build_theta_table(1'000'000);
  for (size_t k = 1; k < t.count(); ++k) {
    const double d = t.theta()[k] - t.theta()[k - 1];
    const double lp = std::log(static_cast<double>(t.primes()[k]));
    REQUIRE(std::abs(d - lp) <= 4.0 * ulp_of(t.theta()[k]));
  }
  // theta strictly increasing, budgets nondecreasing and within the bound
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (size_t k = 1; k < t.count(); ++k) {
    REQUIRE(t.theta()[k] > t.theta()[k - 1]);
    REQUIRE(t.err_budget()[k] >= t.err_budget()[k - 1]);
    REQUIRE(t.err_budget()[k] <= 4.0 * eps * t.theta()[k]);
  }
}

TEST_CASE("builds are bit-identical across thread counts") {
  ThetaBuildOptions one;
  one.threads = 1;
  ThetaBuildOptions many;
  many.threads = 8;
  const ThetaTable a = build_theta_table(1'000'000, one);
  const ThetaTable b = build_theta_table(1'000'000, many);
  REQUIRE(a.count() == b.count());
  CHECK(a.primes() == b.primes());
  CHECK(std::memcmp(a.theta().data(), b.theta().data(),
                    a.count() * sizeof(double)) == 0);
  CHECK(std::memcmp(a.err_budget().data(), b.err_budget().data(),
                    a.count() * sizeof(double)) == 0);
}

TEST_CASE("budget soundness against the extended oracle") {
  const ThetaTable t = build_theta_table(1'000'000);
  ExtendedThetaOracle oracle(1'000'000);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> dist(2.0, 1'000'000.0);
  for (int i = 0; i < 100; ++i) {
    const double x = dist(rng);
    const ThetaValue v = t.at(x);
    const double exact = to_double(oracle.theta(x));
    REQUIRE(std::abs(v.value - exact) <= v.err);
  }
}

TEST_CASE("extended theta values") {
  ExtendedThetaOracle oracle(2'000'000);
  CHECK(abs(oracle.theta(10.0) - parse_ext(kTheta10)) < ext_real("1e-25"));
  CHECK(abs(oracle.theta(2.0) - parse_ext(kLn2)) < ext_real("1e-25"));
  CHECK(oracle.theta(1.5) == 0);

  const ThetaTable t = build_theta_table(1'000'000);
  const ThetaValue v = t.at(1e6);
  CHECK(std::abs(v.value - to_double(oracle.theta(1e6))) <= v.err);

  ExtendedThetaOracle small(1000);
  CHECK_THROWS_AS(small.theta(5000.0), ResourceError);
  CHECK_THROWS_AS(small.theta(-1.0), DomainError);
}

TEST_CASE("memory budget is enforced") {
  ThetaBuildOptions opts;
  opts.mem_budget_bytes = 1024;
  CHECK_THROWS_AS(build_theta_table(100'000'000, opts), ResourceError);
}

TEST_CASE("cache round trip and validation") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "poussin_theta_test";
  fs::create_directories(dir);
  const std::string path = (dir / "t.thet1").string();

  const ThetaTable t = build_theta_table(100'000);
  save_theta_table(t, path);
  const ThetaTable u = load_theta_table(path);
  REQUIRE(u.count() == t.count());
  CHECK(u.limit() == t.limit());
  CHECK(u.primes() == t.primes());
  CHECK(std::memcmp(u.theta().data(), t.theta().data(),
                    t.count() * sizeof(double)) == 0);
  CHECK(std::memcmp(u.err_budget().data(), t.err_budget().data(),
                    t.count() * sizeof(double)) == 0);

  // corrupting theta[1] trips the telescoping validation
  {
    const std::streamoff off =
        5 + 8 + 8 + 8 + static_cast<std::streamoff>(2 * (t.count() - 1)) + 8;
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(off, std::ios::beg);
    const double junk = 1.0;
    f.write(reinterpret_cast<const char*>(&junk), sizeof junk);
  }
  CHECK_THROWS_AS(load_theta_table(path), IoError);
  CHECK_THROWS_AS(load_theta_table((dir / "missing.thet1").string()), IoError);

  // a wrong magic is rejected outright
  {
    std::ofstream f((dir / "bad.thet1").string(), std::ios::binary);
    f << "NOPE!whatever";
  }
  CHECK_THROWS_AS(load_theta_table((dir / "bad.thet1").string()), IoError);

  // load_or_build: first call builds and saves, second call loads
  const fs::path cdir = dir / "cache";
  fs::remove_all(cdir);
  const ThetaTable c1 = load_or_build(50'000, {}, cdir.string());
  CHECK(fs::exists(cdir / "theta_50000.thet1"));
  const ThetaTable c2 = load_or_build(50'000, {}, cdir.string());
  CHECK(c1.primes() == c2.primes());
  CHECK(std::memcmp(c1.theta().data(), c2.theta().data(),
                    c1.count() * sizeof(double)) == 0);
  fs::remove_all(dir);
}
