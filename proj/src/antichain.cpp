#include "hitfam/antichain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "hitfam/oracle.hpp"

namespace hitfam {

namespace {

long long factorial(int d) {
  long long f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

// Unbiased draw in [0, bound) by rejection; mt19937_64's output sequence is
// pinned by the standard, so families are reproducible everywhere.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % bound;
}

Schedule random_permutation(const Poset& p, std::mt19937_64& gen) {
  std::vector<std::size_t> idx(p.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[bounded(gen, i)]);
  Schedule s;
  for (std::size_t i : idx) s.push_back(p.event_at(i));
  return s;
}

// Random linear extension: pick uniformly among the ready events until all
// are placed. On an antichain this is a uniform permutation.
Schedule random_extension(const Poset& p, std::mt19937_64& gen) {
  const std::size_t n = p.size();
  std::vector<std::size_t> indeg(n);
  for (std::size_t i = 0; i < n; ++i) indeg[i] = p.cover_predecessors()[i].size();
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push_back(i);
  Schedule s;
  while (!ready.empty()) {
    std::size_t pick = bounded(gen, ready.size());
    std::size_t i = ready[pick];
    ready.erase(ready.begin() + pick);
    s.push_back(p.event_at(i));
    for (std::size_t j : p.cover_successors()[i])
      if (--indeg[j] == 0) ready.push_back(j);
  }
  return s;
}

std::string tuple_text(const DTuple& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
  return out.str();
}

}  // namespace

long long probabilistic_k(std::size_t n, int d) {
  if (d < 2) fail(errc::invalid_depth, "hitting families need d >= 2");
  if (n < static_cast<std::size_t>(d)) fail(errc::invalid_size, "need n >= d events");
  const double df = static_cast<double>(factorial(d));
  long long k = static_cast<long long>(std::floor(df * d * std::log(static_cast<double>(n)))) + 1;
  // guaranteed by construction; checked in the log domain to dodge overflow
  if (d * std::log(static_cast<double>(n)) + k * std::log1p(-1.0 / df) >= 0)
    fail(errc::internal, "probabilistic row count does not satisfy its own bound");
  return k;
}

RandomFamilyResult random_family(std::size_t n, int d, std::uint64_t seed,
                                 std::size_t max_retries) {
  const long long k = probabilistic_k(n, d);
  Poset p = make_antichain(n);
  std::mt19937_64 gen(seed);

  auto draw = [&]() {
    Family f{p.name(), {}};
    for (long long r = 0; r < k; ++r) f.rows.push_back(random_permutation(p, gen));
    return f;
  };

  if (n > 10) return {draw(), false};

  DTuple last_missed;
  for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
    Family f = draw();
    VerifyReport report = is_d_hitting(p, f, d);
    if (report.is_hitting) return {std::move(f), true};
    last_missed = *report.first_missed;
  }
  fail(errc::generation_failed,
       "random draws kept missing a tuple after " + std::to_string(max_retries) +
           " retries; last missed: " + tuple_text(last_missed));
}

Family greedy_family(const Poset& p, int d, const GreedyPool& pool) {
  std::vector<DTuple> tuples = enumerate_admissible(p, d);
  std::vector<std::vector<std::size_t>> tuple_idx;
  for (const auto& t : tuples) {
    std::vector<std::size_t> idx;
    for (const auto& e : t) idx.push_back(p.index_of(e));
    tuple_idx.push_back(std::move(idx));
  }

  std::vector<bool> covered(tuples.size(), false);
  std::size_t uncovered = tuples.size();

  std::vector<std::size_t> pos(p.size());
  auto coverage = [&](const Schedule& s) {
    for (std::size_t i = 0; i < s.size(); ++i) pos[p.index_of(s[i])] = i;
    std::size_t c = 0;
    for (std::size_t t = 0; t < tuple_idx.size(); ++t) {
      if (covered[t]) continue;
      bool increasing = true;
      for (std::size_t k = 1; k < tuple_idx[t].size() && increasing; ++k)
        increasing = pos[tuple_idx[t][k - 1]] < pos[tuple_idx[t][k]];
      if (increasing) ++c;
    }
    return c;
  };
  auto mark = [&](const Schedule& s) {
    for (std::size_t i = 0; i < s.size(); ++i) pos[p.index_of(s[i])] = i;
    for (std::size_t t = 0; t < tuple_idx.size(); ++t) {
      if (covered[t]) continue;
      bool increasing = true;
      for (std::size_t k = 1; k < tuple_idx[t].size() && increasing; ++k)
        increasing = pos[tuple_idx[t][k - 1]] < pos[tuple_idx[t][k]];
      if (increasing) {
        covered[t] = true;
        --uncovered;
      }
    }
  };

  Family out{p.name(), {}};

  if (pool.exact) {
    ScheduleEnumeration all = enumerate_schedules(p);
    if (all.overflowed)
      fail(errc::infeasible, "exact greedy pool needs every schedule; poset is too large");
    while (uncovered > 0) {
      std::size_t best = 0, best_cover = 0;
      for (std::size_t s = 0; s < all.schedules.size(); ++s) {
        std::size_t c = coverage(all.schedules[s]);
        if (c > best_cover) {
          best_cover = c;
          best = s;
        }
      }
      if (best_cover == 0) fail(errc::internal, "full schedule pool cannot extend coverage");
      mark(all.schedules[best]);
      out.rows.push_back(all.schedules[best]);
    }
    return out;
  }

  if (pool.sample_size == 0) fail(errc::invalid_size, "sampled pool needs a positive sample size");
  std::mt19937_64 gen(pool.seed);
  while (uncovered > 0) {
    Schedule best;
    std::size_t best_cover = 0;
    for (std::size_t s = 0; s < pool.sample_size; ++s) {
      Schedule cand = random_extension(p, gen);
      std::size_t c = coverage(cand);
      if (c > best_cover) {
        best_cover = c;
        best = std::move(cand);
      }
    }
    if (best_cover == 0) {
      std::size_t t = 0;
      while (covered[t]) ++t;
      fail(errc::pool_exhausted,
           "no sampled schedule covers tuple: " + tuple_text(tuples[t]));
    }
    mark(best);
    out.rows.push_back(std::move(best));
  }
  return out;
}

double greedy_upper_bound(std::size_t n, int d) {
  if (d < 2) fail(errc::invalid_depth, "hitting families need d >= 2");
  if (n < static_cast<std::size_t>(d)) fail(errc::invalid_size, "need n >= d events");
  const double df = static_cast<double>(factorial(d));
  const double ln_ratio = d * std::log(static_cast<double>(n)) - std::log(df);
  return std::ceil(df * std::max(0.0, ln_ratio)) + df;
}

double lower_bound(std::size_t n, int d) {
  if (d < 3) fail(errc::invalid_depth, "the counting bound needs d >= 3");
  const std::size_t r = static_cast<std::size_t>(d - 1) / 2;
  if (n <= r) fail(errc::invalid_size, "need n > (d - 1) / 2 events");
  double log2_falling = 0;
  for (std::size_t i = 0; i < r; ++i)
    log2_falling += std::log2(static_cast<double>(n - 1 - i));
  return log2_falling / std::log2(static_cast<double>(r + 1));
}

BoundsReport bounds_report(std::size_t n, int d) {
  if (d < 3) fail(errc::invalid_depth, "bounds report needs d >= 3");
  if (n < static_cast<std::size_t>(d)) fail(errc::invalid_size, "need n >= d events");
  BoundsReport b;
  b.n = n;
  b.d = d;
  b.lower = lower_bound(n, d);
  b.lower_d3 = std::log2(static_cast<double>(n - 1));
  b.greedy_upper = greedy_upper_bound(n, d);
  b.probabilistic_rows = probabilistic_k(n, d);
  b.slope = d / (2 * std::log2(static_cast<double>(d + 1)));
  return b;
}

}  // namespace hitfam
