#pragma once

#include <cstdint>

#include "hitfam/poset.hpp"

namespace hitfam {

/// Row count for the probabilistic construction: floor(d! * d * ln n) + 1.
/// Always enough to push the expected number of missed tuples below one:
/// n^d * (1 - 1/d!)^k < 1. Throws invalid_depth for d < 2, invalid_size
/// for n < d.
long long probabilistic_k(std::size_t n, int d);

struct RandomFamilyResult {
  Family family;
  /// Oracle-checked d-hitting. Families over more than 10 events are
  /// returned unchecked with verified = false.
  bool verified = false;
};

/// probabilistic_k(n, d) uniformly random permutations of the n-event
/// antichain, drawn by Fisher-Yates from a seeded mt19937_64 with
/// rejection-sampled bounded draws (stable across platforms). For n <= 10
/// the result is oracle-verified; a failed draw is retried with the next
/// permutations from the same stream, and exhausting max_retries throws
/// generation_failed with the missed tuple.
RandomFamilyResult random_family(std::size_t n, int d, std::uint64_t seed,
                                 std::size_t max_retries = 64);

/// Candidate pool for the greedy construction.
struct GreedyPool {
  bool exact = true;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  static GreedyPool Exact() { return {}; }
  static GreedyPool Sampled(std::size_t m, std::uint64_t seed) { return {false, m, seed}; }
};

/// Set-cover greedy over admissible d-tuples: repeatedly append the pool
/// schedule hitting the most uncovered tuples (ties: first in pool order).
/// The exact pool is every schedule of p (throws infeasible beyond budget);
/// the sampled pool draws sample_size fresh random linear extensions per
/// step and throws pool_exhausted if none of them covers anything new.
/// Works for any poset; bookkeeping guarantees the result is d-hitting.
Family greedy_family(const Poset& p, int d, const GreedyPool& pool);

/// ceil(d! * lnplus(n^d / d!)) + d!, the greedy set-cover guarantee.
double greedy_upper_bound(std::size_t n, int d);

/// Counting lower bound for antichains, d >= 3: with r = floor((d-1)/2),
/// log2 of the falling factorial (n-1)(n-2)...(n-r) divided by log2(r+1).
double lower_bound(std::size_t n, int d);

struct BoundsReport {
  std::size_t n = 0;
  int d = 0;
  double lower = 0;                 // counting bound above
  double lower_d3 = 0;              // log2(n - 1), the d = 3 specialization
  double greedy_upper = 0;
  long long probabilistic_rows = 0;
  double slope = 0;                 // d / (2 log2(d + 1)), growth of the lower bound in d
};

/// All antichain bounds in one record. Throws invalid_depth for d < 3.
BoundsReport bounds_report(std::size_t n, int d);

}  // namespace hitfam
