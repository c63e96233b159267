#pragma once

#include <cstddef>
#include <string>

#include "hitfam/poset.hpp"

namespace hitfam {

/// Schedule matrix for the double tree of half-height h. Rows come in a top
/// block and a bottom block of 2h rows each; every row splits at
/// block_width into a left and a right half of equal length.
struct MMatrix {
  std::size_t h = 0;
  std::size_t block_width = 0;   // 3 * 2^(h-1) - 1, half a row
  std::vector<Schedule> rows;    // 4h rows, top block first
};

/// Nested sweep of the sub-double-tree addressed by prefix: its F-node,
/// both child sweeps with subtree 0 first, then its S-node. A prefix of
/// full length h yields just its leaf. Throws addressing when the prefix
/// does not name a node, invalid_size for h = 0.
Schedule left_traversal(std::size_t h, const std::string& prefix);

/// Mirror of left_traversal: subtree 1 before subtree 0.
Schedule right_traversal(std::size_t h, const std::string& prefix);

/// Builds the 4h-row matrix inductively. Base h = 1 lists both schedules of
/// the four-event double tree twice; the step to h + 1 wraps relabeled
/// copies of the previous halves in F:e / S:e and appends two fresh
/// traversal rows per block. Throws invalid_size for h = 0.
MMatrix build_m_matrix(std::size_t h);

/// True iff every admissible ordered pair (a, b) has, in the top block and
/// again in the bottom block, some row placing a in the left half and b in
/// the right half.
bool separation_check(const MMatrix& m);

/// The matrix rows as a family over make_double_tree(h). 3-hitting.
Family doubletree_family(std::size_t h);

/// Matrix rows restricted to the F-side plus leaves and relabeled onto
/// make_complete_tree(h) tokens. 3-hitting, exactly 4h rows.
Family tree_family(std::size_t h);

/// Matrix rows restricted to the leaves, leaf path z relabeled to the
/// decimal token for value(z) + 1. 3-hitting for make_antichain(2^h) with
/// 4h rows, so log-many rows in the width.
Family antichain_family_from_leaves(std::size_t h);

/// 3-hitting family for any tree-shaped poset. Nodes are coded into a
/// complete binary tree, spending ceil(log2 Delta) bits per level on the
/// child index; tree_family of the host tree is restricted to the coded
/// events, relabeled back and deduplicated, for at most
/// 4 * height * ceil(log2 Delta) rows. A tree without branching keeps its
/// single schedule. Throws shape for non-trees.
Family arbitrary_tree_family(const Poset& tree);

}  // namespace hitfam
