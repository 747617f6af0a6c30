#include "core/theta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <thread>

#include "core/errors.hpp"
#include "core/sieve.hpp"

namespace poussin {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();  // 2^-52

// Per-entry budget: 2u theta from compensation theory, inflated x4.
// (8 u = 4 eps with u the unit roundoff.)
inline double entry_budget(double theta) { return 4.0 * kEps * theta; }

struct NeumaierAcc {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

void parallel_for_chunks(size_t n, int threads,
                         const std::function<void(size_t, size_t)>& body) {
  unsigned n_workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  if (n_workers <= 1 || n < 1u << 14) {
    body(0, n);
    return;
  }
  const size_t chunk = (n + n_workers - 1) / n_workers;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_workers; ++t) {
    const size_t b = std::min(n, t * chunk);
    const size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e] { body(b, e); });
  }
  for (auto& th : pool) th.join();
}

double approx_prime_count(uint64_t limit) {
  if (limit < 17) return 8.0;
  const double x = static_cast<double>(limit);
  return x / (std::log(x) - 1.1);
}

}  // namespace

size_t ThetaTable::index_of(double x) const {
  if (x < 2.0) return npos;
  // largest prime <= x
  const auto it = std::upper_bound(primes_.begin(), primes_.end(), x,
                                   [](double q, uint64_t p) {
                                     return q < static_cast<double>(p);
                                   });
  return static_cast<size_t>(it - primes_.begin()) - 1;
}

ThetaValue ThetaTable::at(double x) const {
  if (!(x > 0)) throw DomainError("theta query point must be positive");
  if (x > static_cast<double>(limit_))
    throw RangeError("theta query beyond the sieve limit " +
                     std::to_string(limit_));
  const size_t k = index_of(x);
  if (k == npos) return ThetaValue{0.0, 0.0, x};
  ThetaValue v = at_index(k);
  v.x = x;
  return v;
}

ThetaValue ThetaTable::at_index(size_t k) const {
  return ThetaValue{theta_[k], err_[k], static_cast<double>(primes_[k])};
}

ThetaTable build_theta_table(uint64_t limit, const ThetaBuildOptions& opts) {
  if (limit < 2) throw DomainError("sieve limit must be at least 2");
  const double est_bytes = approx_prime_count(limit) * 24.0 * 1.1 +
                           static_cast<double>(opts.segment_span);
  if (est_bytes > static_cast<double>(opts.mem_budget_bytes))
    throw ResourceError("limit " + std::to_string(limit) +
                        " exceeds the memory budget (estimated " +
                        std::to_string(static_cast<uint64_t>(est_bytes)) +
                        " bytes)");

  ThetaTable t;
  t.limit_ = limit;
  t.primes_ = primes_in_range(2, limit, opts.segment_span, opts.threads);
  const size_t n = t.primes_.size();

  std::vector<double> logs(n);
  parallel_for_chunks(n, opts.threads, [&](size_t b, size_t e) {
    for (size_t i = b; i < e; ++i)
      logs[i] = std::log(static_cast<double>(t.primes_[i]));
  });

  // sequential fold in prime order keeps the table thread-count independent
  t.theta_.resize(n);
  t.err_.resize(n);
  NeumaierAcc acc;
  for (size_t i = 0; i < n; ++i) {
    acc.add(logs[i]);
    t.theta_[i] = acc.value();
    t.err_[i] = entry_budget(t.theta_[i]);
  }
  return t;
}

// ---- cache file ----------------------------------------------------------

namespace {

constexpr char kMagic[5] = {'T', 'H', 'E', 'T', '1'};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

template <class T>
void write_raw(std::FILE* f, const T* p, size_t n) {
  if (std::fwrite(p, sizeof(T), n, f) != n)
    throw IoError("short write to theta cache");
}

template <class T>
void read_raw(std::FILE* f, T* p, size_t n) {
  if (std::fread(p, sizeof(T), n, f) != n)
    throw IoError("short read from theta cache");
}

double ulp(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()) - x; }

void validate_telescoping(const ThetaTable& t) {
  const size_t n = t.count();
  const size_t samples = std::min<size_t>(1000, n > 1 ? n - 1 : 0);
  for (size_t s = 0; s < samples; ++s) {
    const size_t k = 1 + s * (n - 1) / (samples + 1);
    const double d = t.theta()[k] - t.theta()[k - 1];
    const double lp = std::log(static_cast<double>(t.primes()[k]));
    if (std::abs(d - lp) > 4.0 * ulp(t.theta()[k]))
      throw IoError("theta cache fails the telescoping check at entry " +
                    std::to_string(k));
  }
}

}  // namespace

void save_theta_table(const ThetaTable& t, const std::string& path) {
  File f(std::fopen(path.c_str(), "wb"));
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write_raw(f.get(), kMagic, 5);
  const uint64_t limit = t.limit(), count = t.count();
  write_raw(f.get(), &limit, 1);
  write_raw(f.get(), &count, 1);
  if (count == 0) return;
  const uint64_t first = t.primes()[0];
  write_raw(f.get(), &first, 1);
  std::vector<uint16_t> gaps(count - 1);
  for (size_t i = 1; i < count; ++i) {
    const uint64_t g = t.primes()[i] - t.primes()[i - 1];
    if (g > std::numeric_limits<uint16_t>::max())
      throw IoError("prime gap too large for the cache encoding");
    gaps[i - 1] = static_cast<uint16_t>(g);
  }
  write_raw(f.get(), gaps.data(), gaps.size());
  write_raw(f.get(), t.theta().data(), count);
  write_raw(f.get(), t.err_budget().data(), count);
  if (std::fflush(f.get()) != 0) throw IoError("cannot flush '" + path + "'");
}

ThetaTable load_theta_table(const std::string& path) {
  File f(std::fopen(path.c_str(), "rb"));
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  char magic[5];
  read_raw(f.get(), magic, 5);
  if (std::memcmp(magic, kMagic, 5) != 0)
    throw IoError("'" + path + "' is not a theta cache (bad magic)");
  uint64_t limit = 0, count = 0;
  read_raw(f.get(), &limit, 1);
  read_raw(f.get(), &count, 1);
  if (limit < 2 || count == 0 || count > (uint64_t{1} << 40))
    throw IoError("'" + path + "' has an implausible header");
  ThetaTable t;
  t.limit_ = limit;
  t.primes_.resize(count);
  read_raw(f.get(), &t.primes_[0], 1);
  std::vector<uint16_t> gaps(count - 1);
  read_raw(f.get(), gaps.data(), gaps.size());
  for (size_t i = 1; i < count; ++i) {
    if (gaps[i - 1] == 0) throw IoError("'" + path + "' has a zero prime gap");
    t.primes_[i] = t.primes_[i - 1] + gaps[i - 1];
  }
  t.theta_.resize(count);
  t.err_.resize(count);
  read_raw(f.get(), t.theta_.data(), count);
  read_raw(f.get(), t.err_.data(), count);
  if (t.primes_[0] != 2 || t.primes_.back() > limit)
    throw IoError("'" + path + "' has inconsistent prime data");
  validate_telescoping(t);
  return t;
}

ThetaTable load_or_build(uint64_t limit, const ThetaBuildOptions& opts,
                         const std::string& cache_dir) {
  if (cache_dir.empty()) return build_theta_table(limit, opts);
  const std::string path =
      (std::filesystem::path(cache_dir) /
       ("theta_" + std::to_string(limit) + ".thet1"))
          .string();
  if (std::filesystem::exists(path)) {
    try {
      ThetaTable t = load_theta_table(path);
      if (t.limit() == limit) return t;
    } catch (const IoError&) {
      // stale or corrupt cache: fall through and rebuild
    }
  }
  ThetaTable t = build_theta_table(limit, opts);
  try {
    std::filesystem::create_directories(cache_dir);
    save_theta_table(t, path);
  } catch (...) {
    std::fprintf(stderr, "warning: could not write theta cache '%s'\n",
                 path.c_str());
  }
  return t;
}

// ---- extended-precision oracle -------------------------------------------

ExtendedThetaOracle::ExtendedThetaOracle(uint64_t cap, int threads)
    : cap_(cap), threads_(threads) {}

void ExtendedThetaOracle::grow(uint64_t need) const {
  if (need <= built_to_) return;
  // round the target up so that clustered queries trigger one growth step
  uint64_t target = std::max<uint64_t>(need, 1024);
  target = std::min(cap_, ((target >> 20) + 1) << 20);

  std::vector<uint64_t> fresh =
      primes_in_range(built_to_ + 1, target, uint64_t{1} << 21, threads_);
  std::vector<ext_real> logs(fresh.size());
  parallel_for_chunks(fresh.size(), threads_, [&](size_t b, size_t e) {
    for (size_t i = b; i < e; ++i) logs[i] = log(ext_real(fresh[i]));
  });
  for (size_t i = 0; i < fresh.size(); ++i) {
    running_ += logs[i];
    const double hi = to_double(running_);
    const double lo = to_double(running_ - hi);
    primes_.push_back(fresh[i]);
    hi_.push_back(hi);
    lo_.push_back(lo);
  }
  built_to_ = target;
}

ext_real ExtendedThetaOracle::theta(double x) const {
  if (!(x > 0)) throw DomainError("theta query point must be positive");
  if (x < 2.0) return ext_real(0);
  if (x > static_cast<double>(cap_))
    throw ResourceError("extended theta query " + format_sig(x, 17) +
                        " beyond the escalation cap " + std::to_string(cap_));
  std::lock_guard<std::mutex> lock(mu_);
  grow(static_cast<uint64_t>(std::ceil(x)));
  const auto it = std::upper_bound(primes_.begin(), primes_.end(), x,
                                   [](double q, uint64_t p) {
                                     return q < static_cast<double>(p);
                                   });
  const size_t k = static_cast<size_t>(it - primes_.begin());
  if (k == 0) return ext_real(0);
  return ext_real(hi_[k - 1]) + ext_real(lo_[k - 1]);
}

}  // namespace poussin
