#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hitfam/poset.hpp"

namespace hitfam {

/// A poset together with its race annotations from the input file. Race
/// pairs are stored normalized: smaller token first, sorted, no duplicates.
struct AnnotatedPoset {
  Poset poset;
  std::vector<std::pair<EventId, EventId>> races;
};

/// Reads "poset v1" text. '#' starts a comment, blank lines are skipped,
/// tokens are whitespace-free. Malformed lines or headers throw parse;
/// edges and races naming unknown events throw reference; a cyclic edge
/// set throws cycle with a witness. Edges must be immediate (cover)
/// relations: an edge already implied transitively throws transitive_edge
/// unless repair_transitive is set, which silently drops it.
AnnotatedPoset parse_poset_text(const std::string& text, bool repair_transitive = false);

/// Canonical rendering of the same format: events in canonical order,
/// cover edges sorted by index pair, races normalized. Feeding the result
/// back through parse_poset_text reproduces the input structure.
std::string serialize_poset_text(const AnnotatedPoset& ap);

struct ParsedFamily {
  int d = 0;
  std::vector<Schedule> rows;
};

/// Reads "family v1 d=<k>" text: one schedule per line, tokens separated
/// by spaces. Comments and blank lines as in the poset format. Rows are
/// not validated against any poset here.
ParsedFamily parse_family_text(const std::string& text);

/// Renders a family for the verify side of the pipeline. A non-empty
/// header_comment becomes a "# ..." line right after the version line.
std::string serialize_family_text(const Family& f, int d, const std::string& header_comment = "");

/// Warm-up rows for d = 3 with the pivot restricted to events that appear
/// in at least one race pair: exactly 2r rows before deduplication when r
/// events race. Completeness under the race abstraction is deliberately
/// traded for family size; this is a pruning heuristic, not a guarantee.
/// Throws unsupported_depth for d != 3 and shape for non-trees.
Family pruned_family(const AnnotatedPoset& ap, int d = 3,
                     std::size_t* rows_before_dedup = nullptr);

/// Reporting record behind the stats command and the gen summaries.
struct RunStats {
  std::size_t n_events = 0;
  std::size_t height = 0;  // longest chain, counted in events
  std::size_t family_size = 0;
  std::string method;
  std::optional<bool> verified;  // present only when the oracle ran
  std::optional<std::size_t> admissible_tuples;
};

}  // namespace hitfam
