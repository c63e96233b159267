#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hitfam/oracle.hpp"
#include "hitfam/poset.hpp"

namespace hitfam {

/// Shape of the lca-closure of a d-tuple in a complete binary tree, plus
/// the data needed to rebuild one schedule hitting every matching tuple.
/// Nodes are numbered in canonical preorder: parent[i] < i, and for two
/// siblings the one tagged sib = 0 has the smaller id. Patterns are equal
/// as values exactly when they are isomorphic.
struct Pattern {
  int d = 0;                // tuple size the pattern serves
  std::vector<int> parent;  // parent id per node, -1 at the root
  std::vector<int> sib;     // 0/1 when the node has a sibling, else -1
  std::vector<int> heval;   // layer of each non-leaf node, -1 on leaves
  std::vector<int> patsch;  // node ids, a linear extension of the shape

  std::size_t size() const { return parent.size(); }
  /// One-line serialization, also the dedup key.
  std::string canonical_key() const;
};

/// All structural invariants for a tree of height h: node count between d
/// and 2d - 1, outdegree at most 2, at most d - 1 non-leaves, canonical
/// preorder numbering, sib defined exactly on sibling pairs, heval strictly
/// increasing along non-leaf ancestry with values below h, patsch a linear
/// extension.
bool is_valid_pattern(const Pattern& p, std::size_t h);

/// Every pattern for tuples of size d in the complete tree of height h,
/// each isomorphism class exactly once, in deterministic order. Throws
/// invalid_depth for d < 2, invalid_size for h < 1, budget when the
/// enumeration exceeds the given cap (the message quotes the closed-form
/// bound (4^(2d-1)/3) h^(d-1) (2d-1)!).
std::vector<Pattern> enumerate_patterns(int d, std::size_t h, std::size_t budget = default_budget());

/// The pattern a tuple conforms to: lca-closure shape, sib read off the
/// principal subtrees, heval the layer of each non-leaf, patsch the
/// restriction of schedule_hitting(tree, t). Throws shape unless tree is a
/// complete binary tree, inadmissible for inadmissible tuples.
Pattern pattern_of_tuple(const Poset& tree, const DTuple& t);

/// Whether t matches p: the lca-closure of t's events is isomorphic to the
/// pattern shape via the sib-directed mapping, non-leaf layers agree with
/// heval, and patsch hits the preimage of t. Throws shape unless tree is a
/// complete binary tree.
bool conforms(const Poset& tree, const DTuple& t, const Pattern& p);

/// One schedule of the height-h complete tree hitting every tuple that
/// conforms to p. Walks patsch and cuts the tree into pieces: each pattern
/// node c owns the events below its entry antichain E(c) down to layer
/// heval(c) (h on leaves), scheduled in lexicographic depth-first order;
/// the layer below is then handed to c's children, split by last bit when
/// there are two. Throws invalid_pattern when p does not fit height h.
Schedule schedule_for_pattern(const Pattern& p, std::size_t h);

/// The d-hitting family for make_complete_tree(h): one schedule per
/// pattern, deduplicated. Budget errors propagate from enumeration.
Family pattern_family(int d, std::size_t h, std::size_t budget = default_budget());

}  // namespace hitfam
