#include "hitfam/basic_families.hpp"

#include <algorithm>
#include <set>

#include "hitfam/oracle.hpp"

namespace hitfam {

namespace {

Schedule dfs_order(const Poset& tree, bool ascending) {
  std::size_t root = tree.index_of(tree_root(tree));
  Schedule out;
  std::vector<std::size_t> stack = {root};
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    out.push_back(tree.event_at(i));
    auto kids = tree.cover_successors()[i];
    // pushed in reverse visiting order
    if (ascending) std::reverse(kids.begin(), kids.end());
    for (std::size_t k : kids) stack.push_back(k);
  }
  return out;
}

// Append the not-yet-scheduled ancestors of each arrangement entry in
// root-down order (the only order the tree allows), entry by entry.
void schedule_prefix(const Poset& tree, const std::vector<std::size_t>& arrangement,
                     std::vector<bool>& scheduled, Schedule& out) {
  for (std::size_t a : arrangement) {
    std::vector<std::size_t> chain;
    std::size_t cur = a;
    while (!scheduled[cur]) {
      chain.push_back(cur);
      const auto& preds = tree.cover_predecessors()[cur];
      if (preds.empty()) break;
      cur = preds[0];
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      scheduled[*it] = true;
      out.push_back(tree.event_at(*it));
    }
  }
}

}  // namespace

Schedule left_dfs(const Poset& tree) { return dfs_order(tree, true); }
Schedule right_dfs(const Poset& tree) { return dfs_order(tree, false); }

Family dfs_family(const Poset& tree) {
  return Family{tree.name(), {left_dfs(tree), right_dfs(tree)}};
}

Family warmup_family(const Poset& tree, int d, std::size_t* rows_before_dedup) {
  if (d < 3) fail(errc::invalid_depth, "warm-up construction needs d >= 3");
  Schedule ldfs = left_dfs(tree);
  Schedule rdfs = right_dfs(tree);

  Family f{tree.name(), {}};
  std::set<Schedule> seen;
  std::size_t raw = 0;
  auto emit = [&](Schedule s) {
    ++raw;
    if (seen.insert(s).second) f.rows.push_back(std::move(s));
  };

  for_each_admissible_indices(tree, d - 2, [&](const std::vector<std::size_t>& arrangement) {
    for (const Schedule* completion : {&ldfs, &rdfs}) {
      Schedule row;
      std::vector<bool> scheduled(tree.size(), false);
      schedule_prefix(tree, arrangement, scheduled, row);
      for (const auto& e : *completion)
        if (!scheduled[tree.index_of(e)]) row.push_back(e);
      emit(std::move(row));
    }
    return true;
  });

  if (rows_before_dedup) *rows_before_dedup = raw;
  return f;
}

Family chain_event_family(std::size_t n, int d) {
  if (n == 0) fail(errc::invalid_size, "chain-plus-event family needs a nonempty chain");
  if (d < 2) fail(errc::invalid_depth, "hitting families need d >= 2");
  auto alpha = [n](std::size_t i) {
    Schedule s;
    for (std::size_t k = 1; k <= i; ++k) s.push_back(std::to_string(k));
    s.push_back("*");
    for (std::size_t k = i + 1; k <= n; ++k) s.push_back(std::to_string(k));
    return s;
  };
  Family f{"chainplus_" + std::to_string(n), {}};
  if (d == 2) {
    f.rows = {alpha(0), alpha(n)};
  } else {
    for (std::size_t i = 0; i <= n; ++i) f.rows.push_back(alpha(i));
  }
  return f;
}

std::size_t height_lower_bound(const Poset& p, int d) {
  if (d < 3) fail(errc::invalid_depth, "the chain-embedding bound needs d >= 3");
  const std::size_t n = p.size();
  // topological pass once; chains are measured inside each incomparable set
  std::vector<std::size_t> order;
  {
    std::vector<std::size_t> indeg(n);
    for (std::size_t i = 0; i < n; ++i) indeg[i] = p.cover_predecessors()[i].size();
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] == 0) ready.push_back(i);
    while (!ready.empty()) {
      std::size_t i = ready.back();
      ready.pop_back();
      order.push_back(i);
      for (std::size_t j : p.cover_successors()[i])
        if (--indeg[j] == 0) ready.push_back(j);
    }
  }

  std::size_t best = 0;
  for (std::size_t e = 0; e < n; ++e) {
    std::vector<std::size_t> len(n, 0);
    std::size_t longest = 0;
    for (std::size_t i : order) {
      if (p.comparable_index(i, e)) continue;
      len[i] = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (len[j] && j != i && p.leq_index(j, i)) len[i] = std::max(len[i], len[j] + 1);
      longest = std::max(longest, len[i]);
    }
    best = std::max(best, longest);
  }
  return best + 1;
}

}  // namespace hitfam
