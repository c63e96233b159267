#include "hitfam/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <set>
#include <sstream>

namespace hitfam {

std::size_t default_budget() {
  static const std::size_t value = [] {
    if (const char* env = std::getenv("HITFAM_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{1000000};
  }();
  return value;
}

ScheduleEnumeration enumerate_schedules(const Poset& p, std::size_t cap) {
  if (cap == 0) fail(errc::invalid_size, "schedule cap must be positive");
  const std::size_t n = p.size();
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i) indeg[i] = p.cover_predecessors()[i].size();

  ScheduleEnumeration out;
  std::vector<std::size_t> prefix;
  std::vector<bool> used(n, false);

  // Picking ready events in ascending canonical index yields the schedules
  // in lexicographic token order.
  std::function<bool()> rec = [&]() {
    if (prefix.size() == n) {
      if (out.schedules.size() == cap) {
        out.overflowed = true;
        return false;
      }
      Schedule s;
      for (std::size_t i : prefix) s.push_back(p.event_at(i));
      out.schedules.push_back(std::move(s));
      return true;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i] || indeg[i] != 0) continue;
      used[i] = true;
      prefix.push_back(i);
      for (std::size_t j : p.cover_successors()[i]) --indeg[j];
      bool keep_going = rec();
      for (std::size_t j : p.cover_successors()[i]) ++indeg[j];
      prefix.pop_back();
      used[i] = false;
      if (!keep_going) return false;
    }
    return true;
  };
  rec();
  return out;
}

void for_each_admissible_indices(const Poset& p, int k,
                                 const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  const std::size_t n = p.size();
  std::vector<std::size_t> cur;
  std::vector<bool> used(n, false);
  std::function<bool()> rec = [&]() {
    if (cur.size() == static_cast<std::size_t>(k)) return fn(cur);
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      // appending j is fine unless it lies strictly below an earlier entry
      bool ok = true;
      for (std::size_t i : cur)
        if (p.leq_index(j, i)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      used[j] = true;
      cur.push_back(j);
      bool keep_going = rec();
      cur.pop_back();
      used[j] = false;
      if (!keep_going) return false;
    }
    return true;
  };
  rec();
}

std::vector<DTuple> enumerate_admissible(const Poset& p, int d, std::size_t cap) {
  if (d < 2 || static_cast<std::size_t>(d) > p.size())
    fail(errc::invalid_depth, "tuple size must satisfy 2 <= d <= " + std::to_string(p.size()));
  std::vector<DTuple> out;
  bool over = false;
  for_each_admissible_indices(p, d, [&](const std::vector<std::size_t>& idx) {
    if (out.size() == cap) {
      over = true;
      return false;
    }
    DTuple t;
    for (std::size_t i : idx) t.push_back(p.event_at(i));
    out.push_back(std::move(t));
    return true;
  });
  if (over) fail(errc::budget, "more than " + std::to_string(cap) + " admissible tuples");
  return out;
}

VerifyReport is_d_hitting(const Poset& p, const Family& f, int d) {
  if (d < 2 || static_cast<std::size_t>(d) > p.size())
    fail(errc::invalid_depth, "tuple size must satisfy 2 <= d <= " + std::to_string(p.size()));
  for (const auto& row : f.rows)
    if (!is_valid_schedule(p, row)) {
      std::ostringstream msg;
      msg << "family row is not a schedule of " << p.name() << ":";
      for (const auto& e : row) msg << " " << e;
      fail(errc::invalid_family, msg.str());
    }

  std::vector<std::vector<std::size_t>> pos(f.rows.size(), std::vector<std::size_t>(p.size()));
  for (std::size_t r = 0; r < f.rows.size(); ++r)
    for (std::size_t i = 0; i < f.rows[r].size(); ++i) pos[r][p.index_of(f.rows[r][i])] = i;

  VerifyReport report;
  report.is_hitting = true;
  report.per_row_hit_counts.assign(f.rows.size(), 0);
  for_each_admissible_indices(p, d, [&](const std::vector<std::size_t>& idx) {
    ++report.admissible_count;
    bool hit = false;
    for (std::size_t r = 0; r < f.rows.size(); ++r) {
      bool increasing = true;
      for (std::size_t k = 1; k < idx.size() && increasing; ++k)
        increasing = pos[r][idx[k - 1]] < pos[r][idx[k]];
      if (increasing) {
        ++report.per_row_hit_counts[r];
        hit = true;
      }
    }
    if (!hit) {
      report.is_hitting = false;
      if (!report.first_missed) {
        DTuple t;
        for (std::size_t i : idx) t.push_back(p.event_at(i));
        report.first_missed = std::move(t);
      }
    }
    return true;
  });
  return report;
}

namespace {

struct BitCover {
  std::size_t words;
  std::vector<std::uint64_t> bits;
  BitCover(std::size_t nbits) : words((nbits + 63) / 64), bits(words, 0) {}
};

}  // namespace

std::size_t min_hitting_size(const Poset& p, int d, std::size_t budget) {
  ScheduleEnumeration all = enumerate_schedules(p, budget);
  if (all.overflowed)
    fail(errc::infeasible, "poset has more than " + std::to_string(budget) + " schedules");
  const std::size_t m = all.schedules.size();

  std::vector<DTuple> tuples = enumerate_admissible(p, d);
  const std::size_t tcount = tuples.size();
  if (tcount == 0) return 0;

  std::vector<std::vector<std::size_t>> pos(m, std::vector<std::size_t>(p.size()));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i < all.schedules[r].size(); ++i)
      pos[r][p.index_of(all.schedules[r][i])] = i;

  const std::size_t words = (tcount + 63) / 64;
  std::vector<std::vector<std::uint64_t>> hit(m, std::vector<std::uint64_t>(words, 0));
  for (std::size_t t = 0; t < tcount; ++t) {
    std::vector<std::size_t> idx;
    for (const auto& e : tuples[t]) idx.push_back(p.index_of(e));
    for (std::size_t r = 0; r < m; ++r) {
      bool increasing = true;
      for (std::size_t k = 1; k < idx.size() && increasing; ++k)
        increasing = pos[r][idx[k - 1]] < pos[r][idx[k]];
      if (increasing) hit[r][t / 64] |= std::uint64_t{1} << (t % 64);
    }
  }

  std::vector<std::uint64_t> full(words, ~std::uint64_t{0});
  if (tcount % 64) full[words - 1] = (std::uint64_t{1} << (tcount % 64)) - 1;

  // suffix unions let the subset search prune whole branches
  std::vector<std::vector<std::uint64_t>> suffix(m + 1, std::vector<std::uint64_t>(words, 0));
  for (std::size_t r = m; r-- > 0;)
    for (std::size_t w = 0; w < words; ++w) suffix[r][w] = suffix[r + 1][w] | hit[r][w];

  auto covers_all = [&](const std::vector<std::uint64_t>& acc) {
    for (std::size_t w = 0; w < words; ++w)
      if (acc[w] != full[w]) return false;
    return true;
  };

  std::size_t nodes_left = 50000000;  // hard guard against combinatorial blowup
  std::function<bool(std::size_t, std::size_t, std::vector<std::uint64_t>&)> search =
      [&](std::size_t start, std::size_t need, std::vector<std::uint64_t>& acc) -> bool {
    if (covers_all(acc)) return true;
    if (need == 0 || start >= m) return false;
    if (nodes_left-- == 0) fail(errc::infeasible, "minimum-size search exceeded its node budget");
    std::vector<std::uint64_t> reachable(words);
    for (std::size_t w = 0; w < words; ++w) reachable[w] = acc[w] | suffix[start][w];
    if (!covers_all(reachable)) return false;
    for (std::size_t r = start; r + need <= m; ++r) {
      std::vector<std::uint64_t> next(words);
      for (std::size_t w = 0; w < words; ++w) next[w] = acc[w] | hit[r][w];
      if (search(r + 1, need - 1, next)) return true;
    }
    return false;
  };

  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<std::uint64_t> acc(words, 0);
    if (search(0, k, acc)) return k;
  }
  fail(errc::internal, "the full schedule set failed to hit every tuple");
}

Schedule schedule_hitting(const Poset& p, const DTuple& t) {
  if (!is_admissible(p, t))
    fail(errc::inadmissible, "tuple cannot be hit: a later entry precedes an earlier one");
  std::vector<std::size_t> idx;
  for (const auto& e : t) idx.push_back(p.index_of(e));

  const std::size_t n = p.size();
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : p.cover_successors()[i]) edges.emplace(i, j);
  for (std::size_t k = 1; k < idx.size(); ++k) edges.emplace(idx[k - 1], idx[k]);

  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& [i, j] : edges) {
    succ[i].push_back(j);
    ++indeg[j];
  }

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(i);
  Schedule out;
  while (!ready.empty()) {
    std::size_t i = ready.top();
    ready.pop();
    out.push_back(p.event_at(i));
    for (std::size_t j : succ[i])
      if (--indeg[j] == 0) ready.push(j);
  }
  if (out.size() != n) fail(errc::internal, "admissible tuple produced a cyclic constraint graph");
  return out;
}

}  // namespace hitfam
