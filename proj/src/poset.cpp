#include "hitfam/poset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace hitfam {

namespace {

// Deterministic Kahn order over an index DAG; returns indices in a
// topological order, or fewer than n entries when there is a cycle.
std::vector<std::size_t> kahn_order(std::size_t n, const std::vector<std::vector<std::size_t>>& succ) {
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& out : succ)
    for (std::size_t j : out) ++indeg[j];
  std::vector<std::size_t> ready, order;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    std::size_t i = ready.back();
    ready.pop_back();
    order.push_back(i);
    for (std::size_t j : succ[i])
      if (--indeg[j] == 0) ready.push_back(j);
  }
  return order;
}

std::string cycle_witness(const std::vector<EventId>& events,
                          const std::vector<std::vector<std::size_t>>& succ,
                          const std::vector<bool>& on_cycle_part) {
  // Every node in the leftover set has a leftover successor; walking from
  // any of them must revisit a node, closing a cycle.
  std::size_t start = 0;
  while (start < events.size() && !on_cycle_part[start]) ++start;
  std::vector<std::size_t> path;
  std::map<std::size_t, std::size_t> pos;
  std::size_t cur = start;
  while (!pos.count(cur)) {
    pos[cur] = path.size();
    path.push_back(cur);
    for (std::size_t j : succ[cur])
      if (on_cycle_part[j]) {
        cur = j;
        break;
      }
  }
  std::ostringstream out;
  for (std::size_t k = pos[cur]; k < path.size(); ++k) out << events[path[k]] << " -> ";
  out << events[cur];
  return out.str();
}

}  // namespace

Poset Poset::from_cover_edges(std::string name, std::vector<EventId> events,
                              std::vector<std::pair<EventId, EventId>> cover_edges,
                              bool drop_transitive_edges) {
  std::sort(events.begin(), events.end());
  for (std::size_t i = 0; i + 1 < events.size(); ++i)
    if (events[i] == events[i + 1]) fail(errc::collision, "duplicate event token '" + events[i] + "'");

  Poset p;
  p.name_ = std::move(name);
  p.events_ = std::move(events);
  const std::size_t n = p.events_.size();

  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [a, b] : cover_edges) {
    for (const auto& e : {a, b})
      if (!p.contains(e)) fail(errc::reference, "edge names unknown event '" + e + "'");
    std::size_t i = p.index_of(a), j = p.index_of(b);
    if (i == j) fail(errc::cycle, "self edge: " + a + " -> " + a);
    edges.emplace(i, j);
  }

  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& [i, j] : edges) succ[i].push_back(j);

  std::vector<std::size_t> topo = kahn_order(n, succ);
  if (topo.size() != n) {
    std::vector<bool> leftover(n, true);
    for (std::size_t i : topo) leftover[i] = false;
    fail(errc::cycle, "cover relation has a cycle: " + cycle_witness(p.events_, succ, leftover));
  }

  p.reach_ = detail::BitMatrix(n);
  for (std::size_t k = topo.size(); k-- > 0;) {
    std::size_t i = topo[k];
    p.reach_.set(i, i);
    for (std::size_t j : succ[i]) p.reach_.or_row(i, j);
  }

  // Hasse check: an edge (i, j) is redundant when some third event sits
  // strictly between its ends.
  std::vector<std::pair<std::size_t, std::size_t>> kept;
  for (const auto& [i, j] : edges) {
    bool redundant = false;
    for (std::size_t k = 0; k < n && !redundant; ++k)
      redundant = k != i && k != j && p.reach_.get(i, k) && p.reach_.get(k, j);
    if (redundant && !drop_transitive_edges)
      fail(errc::transitive_edge,
           "edge " + p.events_[i] + " -> " + p.events_[j] + " is implied transitively");
    if (!redundant) kept.push_back({i, j});
  }

  for (const auto& [i, j] : kept) p.cover_edges_.push_back({p.events_[i], p.events_[j]});
  p.build_adjacency();
  return p;
}

Poset::Poset(std::string name, std::vector<EventId> events, detail::BitMatrix reach)
    : name_(std::move(name)), events_(std::move(events)), reach_(std::move(reach)) {
  derive_cover_from_closure();
  build_adjacency();
}

void Poset::derive_cover_from_closure() {
  const std::size_t n = events_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !reach_.get(i, j)) continue;
      bool direct = true;
      for (std::size_t k = 0; k < n && direct; ++k)
        direct = k == i || k == j || !(reach_.get(i, k) && reach_.get(k, j));
      if (direct) cover_edges_.push_back({events_[i], events_[j]});
    }
  std::sort(cover_edges_.begin(), cover_edges_.end());
}

void Poset::build_adjacency() {
  succ_.assign(events_.size(), {});
  pred_.assign(events_.size(), {});
  std::sort(cover_edges_.begin(), cover_edges_.end());
  for (const auto& [a, b] : cover_edges_) {
    succ_[index_of(a)].push_back(index_of(b));
    pred_[index_of(b)].push_back(index_of(a));
  }
  for (auto& v : succ_) std::sort(v.begin(), v.end());
  for (auto& v : pred_) std::sort(v.begin(), v.end());
}

bool Poset::contains(const EventId& e) const {
  return std::binary_search(events_.begin(), events_.end(), e);
}

std::size_t Poset::index_of(const EventId& e) const {
  auto it = std::lower_bound(events_.begin(), events_.end(), e);
  if (it == events_.end() || *it != e) fail(errc::missing_event, "unknown event '" + e + "'");
  return static_cast<std::size_t>(it - events_.begin());
}

// -- Generators ------------------------------------------------------------

Poset make_chain(std::size_t n) {
  if (n == 0) fail(errc::invalid_size, "chain needs at least one event");
  std::vector<EventId> events;
  std::vector<std::pair<EventId, EventId>> edges;
  for (std::size_t i = 1; i <= n; ++i) {
    events.push_back(std::to_string(i));
    if (i > 1) edges.push_back({std::to_string(i - 1), std::to_string(i)});
  }
  return Poset::from_cover_edges("chain_" + std::to_string(n), std::move(events), std::move(edges));
}

Poset make_antichain(std::size_t n) {
  if (n == 0) fail(errc::invalid_size, "antichain needs at least one event");
  std::vector<EventId> events;
  for (std::size_t i = 1; i <= n; ++i) events.push_back(std::to_string(i));
  return Poset::from_cover_edges("antichain_" + std::to_string(n), std::move(events), {});
}

Poset make_chain_plus_event(std::size_t n) {
  if (n == 0) fail(errc::invalid_size, "chain-plus-event needs a nonempty chain");
  std::vector<EventId> events = {"*"};
  std::vector<std::pair<EventId, EventId>> edges;
  for (std::size_t i = 1; i <= n; ++i) {
    events.push_back(std::to_string(i));
    if (i > 1) edges.push_back({std::to_string(i - 1), std::to_string(i)});
  }
  return Poset::from_cover_edges("chainplus_" + std::to_string(n), std::move(events), std::move(edges));
}

Poset make_complete_tree(std::size_t h) {
  std::vector<EventId> events = {"e"};
  std::vector<std::pair<EventId, EventId>> edges;
  std::vector<std::string> layer = {""};
  for (std::size_t depth = 1; depth <= h; ++depth) {
    std::vector<std::string> next;
    for (const auto& path : layer)
      for (char b : {'0', '1'}) {
        std::string child = path + b;
        events.push_back(tree_token(child));
        edges.push_back({tree_token(path), tree_token(child)});
        next.push_back(child);
      }
    layer = std::move(next);
  }
  return Poset::from_cover_edges("tree_" + std::to_string(h), std::move(events), std::move(edges));
}

Poset make_double_tree(std::size_t h) {
  if (h == 0) fail(errc::invalid_size, "double tree needs half-height >= 1");
  std::vector<EventId> events;
  std::vector<std::pair<EventId, EventId>> edges;
  std::vector<std::string> paths = {""};
  for (std::size_t len = 0; len < h; ++len) {
    std::vector<std::string> next;
    for (const auto& p : paths) {
      if (p.size() == len) {
        events.push_back(doubletree_token('F', p));
        events.push_back(doubletree_token('S', p));
      }
      for (char b : {'0', '1'}) next.push_back(p + b);
    }
    paths = std::move(next);
  }
  for (const auto& z : paths) events.push_back(doubletree_token('L', z));
  // F-side fans out, leaves feed the inverted S-side.
  for (const auto& z : paths) {
    std::string parent = z.substr(0, z.size() - 1);
    edges.push_back({doubletree_token('F', parent), doubletree_token('L', z)});
    edges.push_back({doubletree_token('L', z), doubletree_token('S', parent)});
  }
  for (std::size_t len = 1; len < h; ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      std::string p;
      for (std::size_t b = 0; b < len; ++b) p += ((v >> (len - 1 - b)) & 1) ? '1' : '0';
      std::string parent = p.substr(0, p.size() - 1);
      edges.push_back({doubletree_token('F', parent), doubletree_token('F', p)});
      edges.push_back({doubletree_token('S', p), doubletree_token('S', parent)});
    }
  return Poset::from_cover_edges("doubletree_" + std::to_string(h), std::move(events), std::move(edges));
}

// -- Queries and transforms ------------------------------------------------

bool is_admissible(const Poset& p, const DTuple& t) {
  if (t.size() < 2) fail(errc::invalid_tuple, "tuple needs at least two events");
  std::vector<std::size_t> idx;
  for (const auto& e : t) idx.push_back(p.index_of(e));
  auto sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(errc::invalid_tuple, "tuple has duplicate events");
  for (std::size_t j = 1; j < idx.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (p.leq_index(idx[j], idx[i])) return false;
  return true;
}

bool hits(const Schedule& s, const DTuple& t) {
  if (t.size() < 2) fail(errc::invalid_tuple, "tuple needs at least two events");
  std::map<EventId, std::size_t> pos;
  for (std::size_t i = 0; i < s.size(); ++i) pos.emplace(s[i], i);
  std::set<EventId> seen;
  std::size_t prev = 0;
  bool first = true;
  for (const auto& e : t) {
    if (!seen.insert(e).second) fail(errc::invalid_tuple, "tuple has duplicate events");
    auto it = pos.find(e);
    if (it == pos.end()) fail(errc::missing_event, "event '" + e + "' not in schedule");
    if (!first && it->second <= prev) return false;
    prev = it->second;
    first = false;
  }
  return true;
}

bool is_valid_schedule(const Poset& p, const Schedule& s) {
  if (s.size() != p.size()) return false;
  std::vector<std::size_t> pos(p.size(), SIZE_MAX);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!p.contains(s[i])) return false;
    std::size_t idx = p.index_of(s[i]);
    if (pos[idx] != SIZE_MAX) return false;
    pos[idx] = i;
  }
  for (const auto& [a, b] : p.cover_edges())
    if (pos[p.index_of(a)] >= pos[p.index_of(b)]) return false;
  return true;
}

bool is_tree_shaped(const Poset& p) {
  if (p.size() == 0) return false;
  std::size_t roots = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t indeg = p.cover_predecessors()[i].size();
    if (indeg == 0)
      ++roots;
    else if (indeg != 1)
      return false;
  }
  return roots == 1;
}

EventId tree_root(const Poset& tree) {
  if (!is_tree_shaped(tree)) fail(errc::shape, "poset '" + tree.name() + "' is not tree-shaped");
  for (std::size_t i = 0; i < tree.size(); ++i)
    if (tree.cover_predecessors()[i].empty()) return tree.event_at(i);
  fail(errc::internal, "tree without root");
}

namespace {

// Self-inclusive ancestor chain, deepest first, as canonical indices.
std::vector<std::size_t> ancestor_chain(const Poset& tree, std::size_t i) {
  std::vector<std::size_t> chain = {i};
  while (!tree.cover_predecessors()[chain.back()].empty())
    chain.push_back(tree.cover_predecessors()[chain.back()][0]);
  return chain;
}

std::size_t lca_index(const Poset& tree, std::size_t u, std::size_t v) {
  std::vector<std::size_t> uc = ancestor_chain(tree, u);
  std::set<std::size_t> uset(uc.begin(), uc.end());
  for (std::size_t x : ancestor_chain(tree, v))
    if (uset.count(x)) return x;
  fail(errc::internal, "tree events without a common ancestor");
}

}  // namespace

EventId lca(const Poset& tree, const EventId& u, const EventId& v) {
  if (!is_tree_shaped(tree)) fail(errc::shape, "lca needs a tree-shaped poset");
  return tree.event_at(lca_index(tree, tree.index_of(u), tree.index_of(v)));
}

std::vector<EventId> lca_closure(const Poset& tree, const std::vector<EventId>& xs) {
  if (!is_tree_shaped(tree)) fail(errc::shape, "lca closure needs a tree-shaped poset");
  std::set<std::size_t> closed;
  for (const auto& e : xs) closed.insert(tree.index_of(e));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::size_t> cur(closed.begin(), closed.end());
    for (std::size_t a = 0; a < cur.size() && !grew; ++a)
      for (std::size_t b = a + 1; b < cur.size() && !grew; ++b)
        grew = closed.insert(lca_index(tree, cur[a], cur[b])).second;
  }
  std::vector<EventId> out;
  for (std::size_t i : closed) out.push_back(tree.event_at(i));
  return out;
}

Poset restrict_poset(const Poset& p, const std::vector<EventId>& subset) {
  std::vector<std::size_t> keep;
  for (const auto& e : subset) keep.push_back(p.index_of(e));
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  std::vector<EventId> events;
  for (std::size_t i : keep) events.push_back(p.event_at(i));
  detail::BitMatrix reach(keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b)
      if (p.leq_index(keep[a], keep[b])) reach.set(a, b);
  return Poset(p.name() + "[restricted]", std::move(events), std::move(reach));
}

Schedule restrict_schedule(const Schedule& s, const std::vector<EventId>& subset) {
  std::set<EventId> keep(subset.begin(), subset.end());
  Schedule out;
  for (const auto& e : s)
    if (keep.count(e)) out.push_back(e);
  return out;
}

Poset parallel_compose(const Poset& a, const Poset& b) {
  std::vector<EventId> events = a.events();
  for (const auto& e : b.events()) {
    if (a.contains(e)) fail(errc::collision, "event token '" + e + "' appears on both sides");
    events.push_back(e);
  }
  std::vector<std::pair<EventId, EventId>> edges = a.cover_edges();
  edges.insert(edges.end(), b.cover_edges().begin(), b.cover_edges().end());
  return Poset::from_cover_edges("par(" + a.name() + "," + b.name() + ")", std::move(events),
                                 std::move(edges));
}

std::size_t longest_chain_length(const Poset& p) {
  std::vector<std::size_t> topo = kahn_order(p.size(), p.cover_successors());
  std::vector<std::size_t> len(p.size(), 1);
  std::size_t best = p.size() ? 1 : 0;
  for (std::size_t i : topo) {
    for (std::size_t j : p.cover_predecessors()[i]) len[i] = std::max(len[i], len[j] + 1);
    best = std::max(best, len[i]);
  }
  return best;
}

std::optional<std::size_t> complete_tree_height(const Poset& p) {
  std::size_t h = 0, count = 1;
  while (count < p.size()) {
    ++h;
    count = 2 * count + 1;
  }
  if (count != p.size()) return std::nullopt;
  if (!(p == make_complete_tree(h))) return std::nullopt;
  return h;
}

EventId doubletree_token(char side, const std::string& path) {
  return std::string(1, side) + ":" + tree_token(path);
}

std::pair<char, std::string> doubletree_split(const EventId& token) {
  if (token.size() < 3 || token[1] != ':' ||
      (token[0] != 'F' && token[0] != 'S' && token[0] != 'L'))
    fail(errc::shape, "not a double-tree token: '" + token + "'");
  return {token[0], tree_path(token.substr(2))};
}

}  // namespace hitfam
