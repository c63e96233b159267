#include "hitfam/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include "hitfam/error.hpp"

namespace hitfam {

namespace {

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<std::vector<int>> children_of(const std::vector<int>& parent) {
  std::vector<std::vector<int>> kids(parent.size());
  for (std::size_t i = 1; i < parent.size(); ++i) kids[parent[i]].push_back(static_cast<int>(i));
  return kids;
}

// ---- shape enumeration ---------------------------------------------------

/// Planar tree skeleton in canonical preorder (parent[0] = -1). The planar
/// order doubles as the sib assignment: a left child is side 0.
struct Shape {
  std::vector<int> parent;
  std::vector<int> sib;
};

void graft(Shape& dst, const Shape& sub, int root_sib) {
  int base = static_cast<int>(dst.parent.size());
  for (std::size_t i = 0; i < sub.parent.size(); ++i) {
    dst.parent.push_back(sub.parent[i] < 0 ? 0 : sub.parent[i] + base);
    dst.sib.push_back(sub.parent[i] < 0 ? root_sib : sub.sib[i]);
  }
}

/// All ordered trees with m nodes and outdegree at most 2, smallest first
/// construction order. Results are memoized; references stay valid.
const std::vector<Shape>& shapes_with(std::size_t m) {
  static std::map<std::size_t, std::vector<Shape>> memo;
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  std::vector<Shape> out;
  if (m == 1) {
    out.push_back(Shape{{-1}, {-1}});
  } else {
    for (const Shape& sub : shapes_with(m - 1)) {
      Shape s{{-1}, {-1}};
      graft(s, sub, -1);
      out.push_back(std::move(s));
    }
    for (std::size_t left = 1; left + 1 < m; ++left)
      for (const Shape& ls : shapes_with(left))
        for (const Shape& rs : shapes_with(m - 1 - left)) {
          Shape s{{-1}, {-1}};
          graft(s, ls, 0);
          graft(s, rs, 1);
          out.push_back(std::move(s));
        }
  }
  return memo.emplace(m, std::move(out)).first->second;
}

void assign_heval(const std::vector<int>& nonleaf, std::size_t at, const std::vector<int>& parent,
                  std::size_t h, std::vector<int>& heval, const std::function<void()>& done) {
  if (at == nonleaf.size()) {
    done();
    return;
  }
  int v = nonleaf[at];
  // The parent of a non-leaf is itself a non-leaf with a smaller id, so it
  // is already assigned.
  int lo = v == 0 ? 0 : heval[parent[v]] + 1;
  for (int val = lo; val < static_cast<int>(h); ++val) {
    heval[v] = val;
    assign_heval(nonleaf, at + 1, parent, h, heval, done);
  }
  heval[v] = -1;
}

void gen_extensions(const std::vector<int>& parent, std::vector<char>& placed,
                    std::vector<int>& acc, const std::function<void(const std::vector<int>&)>& emit) {
  if (acc.size() == parent.size()) {
    emit(acc);
    return;
  }
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (placed[v] || (parent[v] >= 0 && !placed[parent[v]])) continue;
    placed[v] = 1;
    acc.push_back(static_cast<int>(v));
    gen_extensions(parent, placed, acc, emit);
    placed[v] = 0;
    acc.pop_back();
  }
}

std::string count_bound_text(int d, std::size_t h) {
  long double b = std::pow(4.0L, 2 * d - 1) * std::pow(static_cast<long double>(h), d - 1) *
                  std::tgamma(2.0L * d) / 3.0L;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6Lg", b);
  return buf;
}

// ---- lca-closure as a preorder tree --------------------------------------

/// Closure of a tuple's events, renumbered: sorting the paths puts prefixes
/// first and side 0 before side 1, which is exactly canonical preorder.
struct ClosureTree {
  std::vector<std::string> path;
  std::vector<int> parent;
  std::vector<std::vector<int>> kids;  // ordered by branch bit
  std::map<std::string, int> id_of;
};

ClosureTree closure_tree(const Poset& tree, const DTuple& t) {
  ClosureTree ct;
  for (const auto& e : lca_closure(tree, t)) ct.path.push_back(tree_path(e));
  std::sort(ct.path.begin(), ct.path.end());
  std::size_t m = ct.path.size();
  for (std::size_t i = 0; i < m; ++i) ct.id_of[ct.path[i]] = static_cast<int>(i);
  ct.parent.assign(m, -1);
  ct.kids.resize(m);
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t len = ct.path[i].size(); len-- > 0;) {
      auto it = ct.id_of.find(ct.path[i].substr(0, len));
      if (it != ct.id_of.end()) {
        ct.parent[i] = it->second;
        ct.kids[it->second].push_back(static_cast<int>(i));
        break;
      }
    }
  }
  return ct;
}

void require_complete_tree(const Poset& tree) {
  if (!complete_tree_height(tree))
    fail(errc::shape, "patterns live on complete binary trees; got '" + tree.name() + "'");
}

}  // namespace

std::string Pattern::canonical_key() const {
  return "d=" + std::to_string(d) + " parent=" + join(parent) + " sib=" + join(sib) +
         " heval=" + join(heval) + " patsch=" + join(patsch);
}

bool is_valid_pattern(const Pattern& p, std::size_t h) {
  std::size_t m = p.size();
  if (p.d < 2) return false;
  if (m < static_cast<std::size_t>(p.d) || m > 2 * static_cast<std::size_t>(p.d) - 1) return false;
  if (p.sib.size() != m || p.heval.size() != m || p.patsch.size() != m) return false;
  if (p.parent[0] != -1) return false;
  for (std::size_t i = 1; i < m; ++i)
    if (p.parent[i] < 0 || static_cast<std::size_t>(p.parent[i]) >= i) return false;

  auto kids = children_of(p.parent);
  std::size_t nonleaves = 0;
  for (const auto& k : kids) {
    if (k.size() > 2) return false;
    if (!k.empty()) ++nonleaves;
  }
  if (nonleaves > static_cast<std::size_t>(p.d) - 1) return false;

  if (p.sib[0] != -1) return false;
  for (const auto& k : kids) {
    if (k.size() == 1 && p.sib[k[0]] != -1) return false;
    if (k.size() == 2 && (p.sib[k[0]] != 0 || p.sib[k[1]] != 1)) return false;
  }

  // Preorder check: walking children in id order must reproduce 0..m-1.
  std::vector<int> stack = {0};
  std::size_t seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v != static_cast<int>(seen++)) return false;
    for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(*it);
  }
  if (seen != m) return false;

  for (std::size_t i = 0; i < m; ++i) {
    if (kids[i].empty()) {
      if (p.heval[i] != -1) return false;
    } else {
      if (p.heval[i] < 0 || static_cast<std::size_t>(p.heval[i]) >= h) return false;
      if (i > 0 && p.heval[p.parent[i]] >= p.heval[i]) return false;
    }
  }

  std::vector<int> pos(m, -1);
  for (std::size_t k = 0; k < m; ++k) {
    int v = p.patsch[k];
    if (v < 0 || static_cast<std::size_t>(v) >= m || pos[v] != -1) return false;
    pos[v] = static_cast<int>(k);
  }
  for (std::size_t i = 1; i < m; ++i)
    if (pos[p.parent[i]] >= pos[i]) return false;
  return true;
}

std::vector<Pattern> enumerate_patterns(int d, std::size_t h, std::size_t budget) {
  if (d < 2) fail(errc::invalid_depth, "patterns need tuple size d >= 2");
  if (h == 0) fail(errc::invalid_size, "patterns need tree height >= 1");
  if (budget == 0) fail(errc::invalid_size, "budget must be positive");
  std::vector<Pattern> out;
  for (std::size_t m = d; m <= 2 * static_cast<std::size_t>(d) - 1; ++m) {
    for (const Shape& s : shapes_with(m)) {
      auto kids = children_of(s.parent);
      std::vector<int> nonleaf;
      for (std::size_t i = 0; i < m; ++i)
        if (!kids[i].empty()) nonleaf.push_back(static_cast<int>(i));
      if (nonleaf.size() > static_cast<std::size_t>(d) - 1) continue;
      std::vector<int> heval(m, -1);
      std::vector<char> placed(m, 0);
      std::vector<int> acc;
      assign_heval(nonleaf, 0, s.parent, h, heval, [&] {
        gen_extensions(s.parent, placed, acc, [&](const std::vector<int>& ext) {
          if (out.size() >= budget)
            fail(errc::budget, "pattern enumeration for d=" + std::to_string(d) + ", h=" +
                                   std::to_string(h) + " exceeded budget " + std::to_string(budget) +
                                   "; the pattern count bound is " + count_bound_text(d, h));
          Pattern p;
          p.d = d;
          p.parent = s.parent;
          p.sib = s.sib;
          p.heval = heval;
          p.patsch = ext;
          out.push_back(std::move(p));
        });
      });
    }
  }
  return out;
}

Pattern pattern_of_tuple(const Poset& tree, const DTuple& t) {
  require_complete_tree(tree);
  if (!is_admissible(tree, t)) fail(errc::inadmissible, "tuple admits no hitting schedule");
  ClosureTree ct = closure_tree(tree, t);
  std::size_t m = ct.path.size();

  Pattern p;
  p.d = static_cast<int>(t.size());
  p.parent = ct.parent;
  p.sib.assign(m, -1);
  p.heval.assign(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    if (ct.kids[i].size() == 2)
      for (int k : ct.kids[i]) p.sib[k] = ct.path[k][ct.path[i].size()] - '0';
    if (!ct.kids[i].empty()) p.heval[i] = static_cast<int>(ct.path[i].size());
  }
  for (const auto& e : schedule_hitting(tree, t)) {
    auto it = ct.id_of.find(tree_path(e));
    if (it != ct.id_of.end()) p.patsch.push_back(it->second);
  }
  return p;
}

bool conforms(const Poset& tree, const DTuple& t, const Pattern& p) {
  require_complete_tree(tree);
  if (t.size() != static_cast<std::size_t>(p.d)) return false;
  std::set<EventId> uniq(t.begin(), t.end());
  if (uniq.size() != t.size()) return false;
  for (const auto& e : t) tree.index_of(e);

  ClosureTree ct = closure_tree(tree, t);
  std::size_t m = p.size();
  if (ct.path.size() != m) return false;
  auto kids = children_of(p.parent);

  // The only candidate isomorphism: roots correspond, and where sib is
  // defined it dictates which branch a child maps into.
  std::vector<int> iso(m, -1);
  iso[0] = 0;
  for (std::size_t v = 0; v < m; ++v) {
    const auto& dk = kids[v];
    const auto& ak = ct.kids[iso[v]];
    if (dk.size() != ak.size()) return false;
    for (std::size_t j = 0; j < dk.size(); ++j) iso[dk[j]] = ak[j];
  }
  for (std::size_t v = 0; v < m; ++v)
    if (!kids[v].empty() && p.heval[v] != static_cast<int>(ct.path[iso[v]].size())) return false;

  std::vector<int> pos(m), inv(m);
  for (std::size_t k = 0; k < m; ++k) pos[p.patsch[k]] = static_cast<int>(k);
  for (std::size_t v = 0; v < m; ++v) inv[iso[v]] = static_cast<int>(v);
  int prev = -1;
  for (const auto& e : t) {
    int cur = pos[inv[ct.id_of.at(tree_path(e))]];
    if (cur <= prev) return false;
    prev = cur;
  }
  return true;
}

Schedule schedule_for_pattern(const Pattern& p, std::size_t h) {
  if (!is_valid_pattern(p, h))
    fail(errc::invalid_pattern, "pattern does not fit a tree of height " + std::to_string(h));
  std::size_t m = p.size();
  auto kids = children_of(p.parent);
  std::vector<std::size_t> cut(m);  // heval extended with h on leaves
  for (std::size_t i = 0; i < m; ++i)
    cut[i] = kids[i].empty() ? h : static_cast<std::size_t>(p.heval[i]);

  std::vector<std::vector<std::string>> entry(m);
  entry[0] = {""};
  std::set<std::string> done;
  Schedule out;
  for (int c : p.patsch) {
    const auto& ec = entry[c];
    // Entry events must form an enabled antichain within the layer bound.
    if (ec.empty()) fail(errc::internal, "entry set ran empty");
    std::size_t minlen = h + 1, maxlen = 0;
    for (const auto& x : ec) {
      if (x.size() > cut[c]) fail(errc::internal, "entry event below its layer bound");
      if (done.count(x)) fail(errc::internal, "entry event scheduled twice");
      if (!x.empty() && !done.count(x.substr(0, x.size() - 1)))
        fail(errc::internal, "entry event not enabled");
      minlen = std::min(minlen, x.size());
      maxlen = std::max(maxlen, x.size());
    }
    for (std::size_t i = 1; i < ec.size(); ++i)
      if (ec[i - 1] == ec[i]) fail(errc::internal, "entry set repeats an event");
    if (minlen != maxlen)
      for (const auto& x : ec)
        for (const auto& y : ec)
          if (x.size() < y.size() && y.compare(0, x.size(), x) == 0)
            fail(errc::internal, "entry set is not an antichain");

    // The pieces owned by c: everything below its entry events, down to and
    // including layer cut[c], in lexicographic depth-first order.
    std::vector<std::string> u;
    for (const auto& x : ec) {
      std::vector<std::string> stack = {x};
      while (!stack.empty()) {
        std::string y = stack.back();
        stack.pop_back();
        if (y.size() < cut[c]) {
          stack.push_back(y + '1');
          stack.push_back(y + '0');
        }
        u.push_back(std::move(y));
      }
    }
    std::sort(u.begin(), u.end());
    for (const auto& y : u) {
      out.push_back(tree_token(y));
      done.insert(y);
    }
    // Hand the next layer to c's children, split by branch bit for two.
    if (kids[c].empty()) continue;
    int k0 = kids[c][0];
    int k1 = kids[c].size() == 2 ? kids[c][1] : k0;
    for (const auto& y : u)
      if (y.size() == cut[c]) {
        entry[k0].push_back(y + '0');
        entry[k1].push_back(y + '1');
      }
  }

  if (out.size() != (std::size_t{1} << (h + 1)) - 1)
    fail(errc::internal, "pieces do not cover the tree");
  if (!is_valid_schedule(make_complete_tree(h), out))
    fail(errc::internal, "assembled schedule breaks the tree order");
  return out;
}

Family pattern_family(int d, std::size_t h, std::size_t budget) {
  Family f{"tree_" + std::to_string(h), {}};
  std::set<Schedule> seen;
  for (const Pattern& p : enumerate_patterns(d, h, budget)) {
    Schedule s = schedule_for_pattern(p, h);
    if (seen.insert(s).second) f.rows.push_back(std::move(s));
  }
  return f;
}

}  // namespace hitfam
