#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "hitfam/poset.hpp"

namespace hitfam {

/// Default enumeration budget: 10^6, overridable through the HITFAM_BUDGET
/// environment variable (read once).
std::size_t default_budget();

struct ScheduleEnumeration {
  std::vector<Schedule> schedules;
  /// More schedules exist beyond the cap; the first `cap` in order were kept.
  bool overflowed = false;
};

/// All linear extensions of p in lexicographic token order, truncated at
/// cap. Throws invalid_size for cap = 0.
ScheduleEnumeration enumerate_schedules(const Poset& p, std::size_t cap = default_budget());

/// All admissible d-tuples, ordered lexicographically by canonical event
/// index. Throws invalid_depth unless 2 <= d <= |p|, budget if more than
/// cap tuples exist.
std::vector<DTuple> enumerate_admissible(const Poset& p, int d, std::size_t cap = default_budget());

/// Streaming form of enumerate_admissible over canonical indices; stops
/// early when fn returns false. No depth-range validation: k >= 1 is
/// accepted (used for arrangement prefixes).
void for_each_admissible_indices(const Poset& p, int k,
                                 const std::function<bool(const std::vector<std::size_t>&)>& fn);

struct VerifyReport {
  bool is_hitting = false;
  std::size_t admissible_count = 0;
  /// First admissible tuple, in enumeration order, that no row hits.
  std::optional<DTuple> first_missed;
  /// For each row, how many admissible tuples it hits.
  std::vector<std::size_t> per_row_hit_counts;
};

/// Checks every admissible d-tuple against every row. Rows that are not
/// valid schedules of p throw invalid_family.
VerifyReport is_d_hitting(const Poset& p, const Family& f, int d);

/// Size of a smallest d-hitting family, by exhaustive search over schedule
/// subsets of growing size. Throws infeasible when p has more than budget
/// schedules or the subset search would be astronomically large.
std::size_t min_hitting_size(const Poset& p, int d, std::size_t budget = 5000);

/// The lexicographically-least schedule that hits t: topological order of
/// the poset order extended by t's consecutive constraints, smallest token
/// first. Throws inadmissible when no schedule hits t.
Schedule schedule_hitting(const Poset& p, const DTuple& t);

}  // namespace hitfam
