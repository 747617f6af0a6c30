#include "core/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "core/errors.hpp"

namespace poussin {

std::vector<uint32_t> simple_sieve(uint32_t n) {
  std::vector<uint32_t> primes;
  if (n < 2) return primes;
  std::vector<uint8_t> composite(n + 1, 0);
  for (uint32_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (uint64_t j = uint64_t{i} * i; j <= n; j += i) composite[j] = 1;
  }
  return primes;
}

namespace {

// Sieves the odd numbers of [seg_lo, seg_hi] (both odd) against base_primes
// and appends the survivors to out.
void sieve_segment(uint64_t seg_lo, uint64_t seg_hi,
                   const std::vector<uint32_t>& base_primes,
                   std::vector<uint64_t>& out) {
  const uint64_t n_odd = (seg_hi - seg_lo) / 2 + 1;
  std::vector<uint64_t> bits((n_odd + 63) / 64, 0);
  for (uint32_t p : base_primes) {
    if (p == 2) continue;
    const uint64_t p2 = uint64_t{p} * p;
    if (p2 > seg_hi) break;
    uint64_t first = std::max<uint64_t>(p2, ((seg_lo + p - 1) / p) * p);
    if ((first & 1) == 0) first += p;
    for (uint64_t m = first; m <= seg_hi; m += 2 * uint64_t{p}) {
      const uint64_t idx = (m - seg_lo) / 2;
      bits[idx >> 6] |= uint64_t{1} << (idx & 63);
    }
  }
  for (uint64_t i = 0; i < n_odd; ++i) {
    if (!(bits[i >> 6] >> (i & 63) & 1)) out.push_back(seg_lo + 2 * i);
  }
}

struct SegmentPlan {
  uint64_t lo = 0, hi = 0;       // odd-aligned segment bounds, inclusive
  std::vector<uint64_t> segs;    // segment starts
  std::vector<uint32_t> base;    // base primes up to sqrt(hi)
  uint64_t span = 0;
  bool include_two = false;
};

SegmentPlan plan(uint64_t lo, uint64_t hi, uint64_t segment_span) {
  SegmentPlan pl;
  if (hi < lo || hi < 2) return pl;
  pl.include_two = lo <= 2;
  pl.lo = std::max<uint64_t>(lo, 3);
  if ((pl.lo & 1) == 0) ++pl.lo;
  pl.hi = hi;
  if (pl.lo > pl.hi) return pl;
  pl.span = std::max<uint64_t>(segment_span, 1u << 14);
  const auto root = static_cast<uint32_t>(std::sqrt(static_cast<double>(hi)));
  pl.base = simple_sieve(root + 1);
  for (uint64_t s = pl.lo; s <= pl.hi; s += pl.span) pl.segs.push_back(s);
  return pl;
}

}  // namespace

void enumerate_primes(uint64_t lo, uint64_t hi, uint64_t segment_span,
                      const std::function<void(uint64_t)>& fn) {
  const SegmentPlan pl = plan(lo, hi, segment_span);
  if (pl.include_two && hi >= 2) fn(2);
  if (pl.segs.empty()) return;
  std::vector<uint64_t> buf;
  for (uint64_t s : pl.segs) {
    buf.clear();
    const uint64_t e = std::min(pl.hi, s + pl.span - 1) | 1;
    sieve_segment(s, std::min(e, pl.hi), pl.base, buf);
    for (uint64_t p : buf) fn(p);
  }
}

std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi,
                                      uint64_t segment_span, int threads) {
  const SegmentPlan pl = plan(lo, hi, segment_span);
  std::vector<uint64_t> primes;
  if (pl.include_two && hi >= 2) primes.push_back(2);
  if (pl.segs.empty()) return primes;

  unsigned n_workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, pl.segs.size());

  std::vector<std::vector<uint64_t>> results(pl.segs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= pl.segs.size()) return;
      const uint64_t s = pl.segs[i];
      const uint64_t e = std::min(pl.hi, s + pl.span - 1) | 1;
      sieve_segment(s, std::min(e, pl.hi), pl.base, results[i]);
    }
  };
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  size_t total = primes.size();
  for (const auto& r : results) total += r.size();
  primes.reserve(total);
  for (const auto& r : results) primes.insert(primes.end(), r.begin(), r.end());
  return primes;
}

}  // namespace poussin
