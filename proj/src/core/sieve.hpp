#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace poussin {

// Simple sieve of Eratosthenes; used for base primes and as a small-scale
// helper. n must fit comfortably in memory (one byte per candidate).
std::vector<uint32_t> simple_sieve(uint32_t n);

// Calls fn for every prime in [lo, hi], ascending. Segmented, odd-only
// bitmap; segment_span is the number of integers covered per segment.
void enumerate_primes(uint64_t lo, uint64_t hi, uint64_t segment_span,
                      const std::function<void(uint64_t)>& fn);

// All primes in [lo, hi], ascending. Segments are sieved concurrently and
// concatenated in segment order, so the result does not depend on the
// thread count. threads = 0 picks the hardware concurrency.
std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi,
                                      uint64_t segment_span, int threads);

}  // namespace poussin
