#pragma once

#include <cstddef>

#include "hitfam/poset.hpp"

namespace hitfam {

/// Depth-first traversal of a tree-shaped poset, children in ascending
/// canonical token order. Throws shape if not tree-shaped.
Schedule left_dfs(const Poset& tree);

/// Children in descending token order.
Schedule right_dfs(const Poset& tree);

/// The 2-hitting pair {left_dfs, right_dfs}. Always exactly two rows, even
/// when they coincide (single-branch trees).
Family dfs_family(const Poset& tree);

/// d-hitting family for a tree-shaped poset, d >= 3: for every admissible
/// (d-2)-arrangement, schedule the arrangement's events with their
/// outstanding ancestors first (each ancestor once, at its earliest bag
/// position), then finish in left_dfs resp. right_dfs order. Two rows per
/// arrangement, so at most 2 n^(d-2) before deduplication;
/// rows_before_dedup receives that raw count when non-null. Throws
/// invalid_depth for d < 3, shape for non-trees.
Family warmup_family(const Poset& tree, int d, std::size_t* rows_before_dedup = nullptr);

/// Families over chain 1..n plus the independent event "*". a_i denotes
/// the schedule with "*" after i chain events. d = 2 gives {a_0, a_n};
/// d >= 3 gives all n + 1 schedules, which is optimal. Throws invalid_depth
/// for d < 2, invalid_size for n = 0.
Family chain_event_family(std::size_t n, int d);

/// Lower bound on the size of any d-hitting family of p (d >= 3): m + 1
/// where m is the longest chain of p lying entirely incomparable to some
/// single event; 1 when there is no such embedding.
std::size_t height_lower_bound(const Poset& p, int d);

}  // namespace hitfam
