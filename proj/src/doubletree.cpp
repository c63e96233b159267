#include "hitfam/doubletree.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <set>
#include <utility>

#include "hitfam/basic_families.hpp"
#include "hitfam/error.hpp"

namespace hitfam {

namespace {

void check_address(std::size_t h, const std::string& prefix) {
  if (h == 0) fail(errc::invalid_size, "double tree needs half-height >= 1");
  if (prefix.size() > h)
    fail(errc::addressing, "prefix '" + prefix + "' is deeper than half-height " + std::to_string(h));
  for (char c : prefix)
    if (c != '0' && c != '1')
      fail(errc::addressing, "prefix '" + prefix + "' has characters outside 0/1");
}

void sweep(std::size_t h, const std::string& prefix, bool left_first, Schedule& out) {
  if (prefix.size() == h) {
    out.push_back(doubletree_token('L', prefix));
    return;
  }
  out.push_back(doubletree_token('F', prefix));
  sweep(h, prefix + (left_first ? '0' : '1'), left_first, out);
  sweep(h, prefix + (left_first ? '1' : '0'), left_first, out);
  out.push_back(doubletree_token('S', prefix));
}

/// Entry-wise path prefixing, the isomorphism onto subtree ell.
Schedule shifted(const Schedule& half, char ell) {
  Schedule out;
  out.reserve(half.size());
  for (const auto& e : half) {
    auto [side, path] = doubletree_split(e);
    out.push_back(doubletree_token(side, std::string(1, ell) + path));
  }
  return out;
}

void append(Schedule& dst, const Schedule& src) { dst.insert(dst.end(), src.begin(), src.end()); }

Schedule cat(std::initializer_list<Schedule> parts) {
  Schedule out;
  for (const auto& part : parts) append(out, part);
  return out;
}

/// Keeps the events selected by keep, mapped through rename.
template <typename Keep, typename Rename>
Family project_rows(const MMatrix& m, const std::string& poset_ref, Keep keep, Rename rename) {
  Family f{poset_ref, {}};
  for (const auto& row : m.rows) {
    Schedule out;
    for (const auto& e : row) {
      auto [side, path] = doubletree_split(e);
      if (keep(side)) out.push_back(rename(side, path));
    }
    f.rows.push_back(std::move(out));
  }
  return f;
}

}  // namespace

Schedule left_traversal(std::size_t h, const std::string& prefix) {
  check_address(h, prefix);
  Schedule out;
  sweep(h, prefix, true, out);
  return out;
}

Schedule right_traversal(std::size_t h, const std::string& prefix) {
  check_address(h, prefix);
  Schedule out;
  sweep(h, prefix, false, out);
  return out;
}

MMatrix build_m_matrix(std::size_t h) {
  if (h == 0) fail(errc::invalid_size, "double tree needs half-height >= 1");
  // Half-rows of the two blocks: top row i is tl[i] ++ tr[i], bottom row i
  // is bl[i] ++ br[i]. The four-event base case lists both of its
  // schedules twice; the duplication feeds distinct rows from then on.
  std::vector<Schedule> tl = {{"F:e", "L:0"}, {"F:e", "L:1"}};
  std::vector<Schedule> tr = {{"L:1", "S:e"}, {"L:0", "S:e"}};
  std::vector<Schedule> bl = tl;
  std::vector<Schedule> br = tr;
  for (std::size_t k = 2; k <= h; ++k) {
    std::vector<Schedule> ntl, ntr, nbl, nbr;
    for (std::size_t i = 0; i < tl.size(); ++i) {
      // Top rows interleave the copies as 0|1 on the left, 1|0 on the
      // right; bottom rows mirror that. Keeping the orders opposed is what
      // makes the separation property survive the step.
      ntl.push_back(cat({{"F:e"}, shifted(tl[i], '0'), shifted(tl[i], '1')}));
      ntr.push_back(cat({shifted(tr[i], '1'), shifted(tr[i], '0'), {"S:e"}}));
      nbl.push_back(cat({{"F:e"}, shifted(bl[i], '1'), shifted(bl[i], '0')}));
      nbr.push_back(cat({shifted(br[i], '0'), shifted(br[i], '1'), {"S:e"}}));
    }
    for (char first : {'0', '1'}) {
      char second = first == '0' ? '1' : '0';
      ntl.push_back(cat({{"F:e"}, left_traversal(k, std::string(1, first))}));
      ntr.push_back(cat({left_traversal(k, std::string(1, second)), {"S:e"}}));
      nbl.push_back(cat({{"F:e"}, right_traversal(k, std::string(1, first))}));
      nbr.push_back(cat({right_traversal(k, std::string(1, second)), {"S:e"}}));
    }
    tl = std::move(ntl);
    tr = std::move(ntr);
    bl = std::move(nbl);
    br = std::move(nbr);
  }

  MMatrix m;
  m.h = h;
  m.block_width = 3 * (std::size_t{1} << (h - 1)) - 1;
  for (std::size_t i = 0; i < tl.size(); ++i) m.rows.push_back(cat({tl[i], tr[i]}));
  for (std::size_t i = 0; i < bl.size(); ++i) m.rows.push_back(cat({bl[i], br[i]}));
  for (const auto& row : m.rows)
    if (row.size() != 2 * m.block_width) fail(errc::internal, "matrix row has wrong length");
  return m;
}

bool separation_check(const MMatrix& m) {
  Poset p = make_double_tree(m.h);
  std::size_t half = m.rows.size() / 2;
  // Event position per row, by canonical index.
  std::vector<std::vector<std::size_t>> pos(m.rows.size(), std::vector<std::size_t>(p.size()));
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    for (std::size_t c = 0; c < m.rows[r].size(); ++c) pos[r][p.index_of(m.rows[r][c])] = c;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (a == b || p.leq_index(b, a)) continue;  // inadmissible as (a, b)
      for (std::size_t block : {std::size_t{0}, half}) {
        bool split = false;
        for (std::size_t r = block; r < block + half && !split; ++r)
          split = pos[r][a] < m.block_width && pos[r][b] >= m.block_width;
        if (!split) return false;
      }
    }
  return true;
}

Family doubletree_family(std::size_t h) {
  MMatrix m = build_m_matrix(h);
  return Family{"doubletree_" + std::to_string(h), std::move(m.rows)};
}

Family tree_family(std::size_t h) {
  MMatrix m = build_m_matrix(h);
  return project_rows(
      m, "tree_" + std::to_string(h), [](char side) { return side != 'S'; },
      [](char, const std::string& path) { return tree_token(path); });
}

Family antichain_family_from_leaves(std::size_t h) {
  MMatrix m = build_m_matrix(h);
  return project_rows(
      m, "antichain_" + std::to_string(std::size_t{1} << h),
      [](char side) { return side == 'L'; },
      [](char, const std::string& path) {
        std::size_t v = 0;
        for (char c : path) v = 2 * v + (c == '1');
        return std::to_string(v + 1);
      });
}

Family arbitrary_tree_family(const Poset& tree) {
  EventId root = tree_root(tree);
  std::size_t root_idx = tree.index_of(root);

  // Depth of every node and the widest fan-out, one pass down from the root.
  const auto& succ = tree.cover_successors();
  std::vector<std::size_t> depth(tree.size(), 0);
  std::vector<std::size_t> order = {root_idx};
  std::size_t delta = 0, height = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    std::size_t u = order[head];
    delta = std::max(delta, succ[u].size());
    height = std::max(height, depth[u]);
    for (std::size_t v : succ[u]) {
      depth[v] = depth[u] + 1;
      order.push_back(v);
    }
  }
  if (delta < 2) return Family{tree.name(), {left_dfs(tree)}};

  std::size_t width = 1;
  while ((std::size_t{1} << width) < delta) ++width;

  // Code each node by its run of fixed-width child indices; u precedes v in
  // the tree exactly when code(u) prefixes code(v).
  std::vector<std::string> code(tree.size());
  for (std::size_t u : order)
    for (std::size_t j = 0; j < succ[u].size(); ++j) {
      std::string bits;
      for (std::size_t b = width; b-- > 0;) bits += ((j >> b) & 1) ? '1' : '0';
      code[succ[u][j]] = code[u] + bits;
    }
  std::map<EventId, EventId> back;
  for (std::size_t u = 0; u < tree.size(); ++u) back[tree_token(code[u])] = tree.event_at(u);

  Family host = tree_family(height * width);
  Family f{tree.name(), {}};
  std::set<Schedule> seen;
  for (const auto& row : host.rows) {
    Schedule out;
    for (const auto& e : row) {
      auto it = back.find(e);
      if (it != back.end()) out.push_back(it->second);
    }
    if (seen.insert(out).second) f.rows.push_back(std::move(out));
  }
  return f;
}

}  // namespace hitfam
