#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hitfam/error.hpp"

namespace hitfam {

/// Events are identified by whitespace-free string tokens. Generators use
/// canonical tokens: decimal indices "1".."n" for chains and antichains,
/// bitstring paths with root "e" for complete binary trees, "F:<path>",
/// "S:<path>", "L:<path>" for double trees, and "*" for the independent
/// event of the chain-plus-event order.
using EventId = std::string;

/// A linear extension, written out as the sequence of all events.
using Schedule = std::vector<EventId>;

/// An ordered tuple of distinct events. A schedule "hits" the tuple when it
/// contains the events in exactly this relative order.
using DTuple = std::vector<EventId>;

namespace detail {

/// Square bit matrix, row-major, packed into 64-bit words.
class BitMatrix {
public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_(((n + 63) / 64)), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  /// row(dst) |= row(src)
  void or_row(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w) bits_[dst * words_ + w] |= bits_[src * words_ + w];
  }

private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace detail

/// A finite partial order over string-token events, immutable once built.
/// Events are held in canonical (byte-lexicographic) token order so that
/// every enumeration and serialization derived from a poset is
/// deterministic. Reachability is materialized as an explicit closure with
/// one bit row per event; cover edges are kept in Hasse form.
class Poset {
public:
  Poset() = default;

  /// Builds a poset from its Hasse diagram. Duplicate edges are collapsed.
  /// Throws: collision (duplicate token), reference (edge names unknown
  /// token), cycle (cover relation has a cycle, witness in the message),
  /// transitive_edge (an edge is already implied; pass
  /// drop_transitive_edges to repair by dropping instead).
  static Poset from_cover_edges(std::string name, std::vector<EventId> events,
                                std::vector<std::pair<EventId, EventId>> cover_edges,
                                bool drop_transitive_edges = false);

  std::size_t size() const { return events_.size(); }
  const std::string& name() const { return name_; }

  /// All events in canonical order.
  const std::vector<EventId>& events() const { return events_; }
  const EventId& event_at(std::size_t i) const { return events_[i]; }
  bool contains(const EventId& e) const;
  /// Canonical index of an event; throws missing_event for unknown tokens.
  std::size_t index_of(const EventId& e) const;

  /// x <= y in the partial order (reflexive). Unknown tokens throw
  /// missing_event.
  bool leq(const EventId& x, const EventId& y) const { return leq_index(index_of(x), index_of(y)); }
  bool leq_index(std::size_t i, std::size_t j) const { return reach_.get(i, j); }
  bool comparable_index(std::size_t i, std::size_t j) const {
    return reach_.get(i, j) || reach_.get(j, i);
  }

  /// Hasse edges (x, y) with x an immediate predecessor of y, sorted by
  /// canonical index pair.
  const std::vector<std::pair<EventId, EventId>>& cover_edges() const { return cover_edges_; }
  const std::vector<std::vector<std::size_t>>& cover_successors() const { return succ_; }
  const std::vector<std::vector<std::size_t>>& cover_predecessors() const { return pred_; }

  /// Same events and same order; names are ignored.
  friend bool operator==(const Poset& a, const Poset& b) {
    return a.events_ == b.events_ && a.cover_edges_ == b.cover_edges_;
  }

  friend Poset restrict_poset(const Poset& p, const std::vector<EventId>& subset);

private:
  Poset(std::string name, std::vector<EventId> events, detail::BitMatrix reach);
  void derive_cover_from_closure();
  void build_adjacency();

  std::string name_;
  std::vector<EventId> events_;  // sorted
  detail::BitMatrix reach_;      // reach_.get(i, j)  <=>  events_[i] <= events_[j]
  std::vector<std::pair<EventId, EventId>> cover_edges_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<std::size_t>> pred_;
};

/// A set of schedules over one poset. rows preserve construction order;
/// poset_ref names the poset they were built for.
struct Family {
  std::string poset_ref;
  std::vector<Schedule> rows;
};

// -- Generators ------------------------------------------------------------

/// Total order 1 < 2 < ... < n. Throws invalid_size for n = 0.
Poset make_chain(std::size_t n);

/// n pairwise-incomparable events. Throws invalid_size for n = 0.
Poset make_antichain(std::size_t n);

/// Chain 1 < ... < n plus one event "*" incomparable to all of it.
Poset make_chain_plus_event(std::size_t n);

/// Complete binary tree of height h (in edges): 2^(h+1) - 1 events, root
/// "e", node tokens are root-to-node bitstrings, x <= y iff x is a prefix
/// of y.
Poset make_complete_tree(std::size_t h);

/// Double tree of half-height h >= 1: an F-tree of 2^h - 1 events fanning
/// out into 2^h shared leaves (side L), collected back by an inverted
/// S-tree. F:x <= L:z iff x is a prefix of z, L:z <= S:y iff y is a prefix
/// of z, leaves pairwise incomparable. 3 * 2^h - 2 events total.
Poset make_double_tree(std::size_t h);

// -- Queries and transforms ------------------------------------------------

/// Whether some schedule can contain the tuple's events in the given order:
/// no later entry may lie strictly below an earlier one. Throws
/// invalid_tuple on duplicates or fewer than two entries, missing_event on
/// unknown tokens.
bool is_admissible(const Poset& p, const DTuple& t);

/// Whether schedule s places t's events in exactly t's order. Events of t
/// absent from s throw missing_event.
bool hits(const Schedule& s, const DTuple& t);

/// s is a permutation of p's events respecting the order.
bool is_valid_schedule(const Poset& p, const Schedule& s);

/// Single minimal event and every other event covered by exactly one
/// predecessor: the Hasse diagram is a rooted tree.
bool is_tree_shaped(const Poset& p);

/// Root of a tree-shaped poset. Throws shape if not tree-shaped.
EventId tree_root(const Poset& tree);

/// Deepest common ancestor of u and v in a tree-shaped poset (u and v
/// count as their own ancestors). Throws shape if not tree-shaped.
EventId lca(const Poset& tree, const EventId& u, const EventId& v);

/// Closure of xs under pairwise lca, returned sorted. The closure of a
/// nonempty X has at most 2|X| - 1 events.
std::vector<EventId> lca_closure(const Poset& tree, const std::vector<EventId>& xs);

/// Induced order on a subset of events.
Poset restrict_poset(const Poset& p, const std::vector<EventId>& subset);

/// Subsequence of s keeping exactly the events of subset.
Schedule restrict_schedule(const Schedule& s, const std::vector<EventId>& subset);

/// Disjoint union: events of both sides, cross pairs incomparable. Shared
/// tokens throw collision.
Poset parallel_compose(const Poset& a, const Poset& b);

/// Longest chain, counted in events (a single event gives 1).
std::size_t longest_chain_length(const Poset& p);

/// Height h when p equals make_complete_tree(h), nullopt otherwise.
std::optional<std::size_t> complete_tree_height(const Poset& p);

// -- Token helpers ---------------------------------------------------------

/// Bitstring path <-> complete-tree token ("" <-> "e").
inline EventId tree_token(const std::string& path) { return path.empty() ? EventId("e") : path; }
inline std::string tree_path(const EventId& token) { return token == "e" ? std::string() : token; }

/// Double-tree token for side 'F', 'S' or 'L' and a bitstring path.
EventId doubletree_token(char side, const std::string& path);
/// Inverse of doubletree_token; throws shape on malformed tokens.
std::pair<char, std::string> doubletree_split(const EventId& token);

}  // namespace hitfam
