#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "hitfam/oracle.hpp"
#include "hitfam/poset.hpp"

using namespace hitfam;

namespace {

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  REQUIRE(false);
  return errc::internal;
}

// Brute-force route: filter all n! permutations. Slow but structurally
// unrelated to the backtracking enumerator.
std::vector<Schedule> permutation_filter(const Poset& p) {
  std::vector<std::size_t> idx(p.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Schedule> out;
  do {
    bool ok = true;
    for (std::size_t a = 0; a < idx.size() && ok; ++a)
      for (std::size_t b = a + 1; b < idx.size() && ok; ++b)
        ok = !p.leq_index(idx[b], idx[a]);
    if (ok) {
      Schedule s;
      for (std::size_t i : idx) s.push_back(p.event_at(i));
      out.push_back(std::move(s));
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
  std::sort(out.begin(), out.end());
  return out;
}

// All d-arrangements passing the pairwise admissibility condition, by
// direct generation over index tuples.
std::vector<std::vector<std::size_t>> arrangement_filter(const Poset& p, int d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::vector<bool> used(p.size(), false);
  std::function<void()> rec = [&]() {
    if (cur.size() == static_cast<std::size_t>(d)) {
      bool ok = true;
      for (std::size_t a = 0; a < cur.size() && ok; ++a)
        for (std::size_t b = a + 1; b < cur.size() && ok; ++b)
          ok = !p.leq_index(cur[b], cur[a]);
      if (ok) out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(i);
      rec();
      cur.pop_back();
      used[i] = false;
    }
  };
  rec();
  return out;
}

}  // namespace

TEST_CASE("enumerate_schedules matches brute-force permutation filtering") {
  for (const Poset& p : {make_chain(4), make_antichain(4), make_chain_plus_event(4),
                         make_complete_tree(2), make_double_tree(1), make_double_tree(2)}) {
    auto got = enumerate_schedules(p);
    CHECK_FALSE(got.overflowed);
    auto want = permutation_filter(p);
    CHECK(got.schedules.size() == want.size());
    auto sorted = got.schedules;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == want);
    // output already arrives lexicographically sorted
    CHECK(got.schedules == sorted);
  }
}

TEST_CASE("schedule counts") {
  CHECK(enumerate_schedules(make_chain(3)).schedules ==
        std::vector<Schedule>{{"1", "2", "3"}});
  CHECK(enumerate_schedules(make_antichain(3)).schedules.size() == 6);
  CHECK(enumerate_schedules(make_complete_tree(2)).schedules.size() == 80);
  CHECK(enumerate_schedules(make_double_tree(1)).schedules.size() == 2);
  // chain plus one free event: n + 1 positions for "*"
  for (std::size_t n = 1; n <= 5; ++n)
    CHECK(enumerate_schedules(make_chain_plus_event(n)).schedules.size() == n + 1);
}

TEST_CASE("enumerate_schedules cap and overflow flag") {
  auto r = enumerate_schedules(make_antichain(4), 10);
  CHECK(r.overflowed);
  CHECK(r.schedules.size() == 10);
  auto all = enumerate_schedules(make_antichain(4), 24);
  CHECK_FALSE(all.overflowed);
  CHECK(all.schedules.size() == 24);
  CHECK(std::equal(r.schedules.begin(), r.schedules.end(), all.schedules.begin()));
  CHECK(code_of([] { enumerate_schedules(make_chain(2), 0); }) == errc::invalid_size);
}

TEST_CASE("enumerate_admissible") {
  auto pairs = enumerate_admissible(make_chain(3), 2);
  CHECK(pairs == std::vector<DTuple>{{"1", "2"}, {"1", "3"}, {"2", "3"}});

  CHECK(enumerate_admissible(make_antichain(3), 3).size() == 6);

  // {1, 2, *} with 1 before 2: exactly three arrangements
  auto triples = enumerate_admissible(make_chain_plus_event(2), 3);
  CHECK(triples.size() == 3);
  std::set<DTuple> got(triples.begin(), triples.end());
  CHECK(got == std::set<DTuple>{{"*", "1", "2"}, {"1", "*", "2"}, {"1", "2", "*"}});

  CHECK(code_of([] { enumerate_admissible(make_chain(3), 1); }) == errc::invalid_depth);
  CHECK(code_of([] { enumerate_admissible(make_chain(3), 4); }) == errc::invalid_depth);
  CHECK(code_of([] { enumerate_admissible(make_antichain(4), 3, 5); }) == errc::budget);
}

TEST_CASE("enumerate_admissible matches brute-force arrangement filtering") {
  for (const Poset& p : {make_chain_plus_event(3), make_complete_tree(2), make_double_tree(1)})
    for (int d = 2; d <= 3; ++d) {
      auto got = enumerate_admissible(p, d);
      auto want = arrangement_filter(p, d);
      REQUIRE(got.size() == want.size());
      for (std::size_t k = 0; k < got.size(); ++k) {
        DTuple w;
        for (std::size_t i : want[k]) w.push_back(p.event_at(i));
        CHECK(got[k] == w);
      }
    }
}

TEST_CASE("is_d_hitting verdicts") {
  Poset t2 = make_complete_tree(2);
  Family dfs_pair{"tree_2",
                  {{"e", "0", "00", "01", "1", "10", "11"}, {"e", "1", "11", "10", "0", "01", "00"}}};
  auto r = is_d_hitting(t2, dfs_pair, 2);
  CHECK(r.is_hitting);
  CHECK_FALSE(r.first_missed.has_value());
  CHECK(r.per_row_hit_counts.size() == 2);

  Poset t1 = make_complete_tree(1);
  Family single{"tree_1", {{"e", "0", "1"}}};
  auto miss = is_d_hitting(t1, single, 2);
  CHECK_FALSE(miss.is_hitting);
  REQUIRE(miss.first_missed.has_value());
  // first missed pair in enumeration order: ("1", "0")
  CHECK(*miss.first_missed == DTuple{"1", "0"});
  CHECK(miss.per_row_hit_counts[0] + 1 == miss.admissible_count);

  Poset a4 = make_antichain(4);
  Family all{"antichain_4", enumerate_schedules(a4).schedules};
  CHECK(is_d_hitting(a4, all, 3).is_hitting);

  Family bad{"tree_2", {{"e", "0"}}};
  CHECK(code_of([&] { is_d_hitting(t2, bad, 2); }) == errc::invalid_family);
  CHECK(code_of([&] { is_d_hitting(t2, dfs_pair, 1); }) == errc::invalid_depth);
}

TEST_CASE("single-row hit counts cover all tuples on a chain") {
  Poset c = make_chain(4);
  Family f{"chain_4", enumerate_schedules(c).schedules};
  auto r = is_d_hitting(c, f, 3);
  CHECK(r.is_hitting);
  CHECK(r.per_row_hit_counts == std::vector<std::size_t>{r.admissible_count});
}

TEST_CASE("min_hitting_size") {
  CHECK(min_hitting_size(make_chain(5), 2) == 1);
  CHECK(min_hitting_size(make_chain(5), 3) == 1);
  CHECK(min_hitting_size(make_complete_tree(1), 2) == 2);
  CHECK(min_hitting_size(make_chain_plus_event(3), 3) == 4);
  CHECK(code_of([] { min_hitting_size(make_chain_plus_event(3), 3, 2); }) == errc::infeasible);
}

TEST_CASE("min_hitting_size grows with tuple size") {
  for (const Poset& p : {make_chain_plus_event(2), make_complete_tree(1)}) {
    std::size_t prev = 0;
    for (int d = 2; d <= static_cast<int>(p.size()) && d <= 3; ++d) {
      std::size_t cur = min_hitting_size(p, d);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("schedule_hitting") {
  CHECK(schedule_hitting(make_chain_plus_event(3), {"1", "*", "2"}) ==
        Schedule{"1", "*", "2", "3"});
  // smallest-token-first tiebreak: the left traversal emerges
  CHECK(schedule_hitting(make_complete_tree(2), {"00", "01"}) ==
        Schedule{"e", "0", "00", "01", "1", "10", "11"});
  CHECK(schedule_hitting(make_antichain(3), {"3", "1"}) == Schedule{"2", "3", "1"});
  CHECK(code_of([] { schedule_hitting(make_chain(3), {"3", "1"}); }) == errc::inadmissible);
}

TEST_CASE("a tuple is admissible exactly when some schedule hits it") {
  for (const Poset& p : {make_chain_plus_event(3), make_complete_tree(2), make_double_tree(1),
                         make_antichain(4)}) {
    auto schedules = enumerate_schedules(p).schedules;
    for (int d = 2; d <= 4 && d <= static_cast<int>(p.size()); ++d) {
      for (const auto& idx : arrangement_filter(p, d)) {
        DTuple t;
        for (std::size_t i : idx) t.push_back(p.event_at(i));
        // arrangement_filter emits admissible tuples only; each must be hit
        // by schedule_hitting's output and by some enumerated schedule
        Schedule s = schedule_hitting(p, t);
        CHECK(is_valid_schedule(p, s));
        CHECK(hits(s, t));
        bool any = false;
        for (const auto& row : schedules)
          if (hits(row, t)) {
            any = true;
            break;
          }
        CHECK(any);
      }
    }
  }
}

TEST_CASE("hits implies admissible over every schedule and arrangement") {
  for (const Poset& p : {make_chain_plus_event(3), make_complete_tree(2), make_double_tree(1)}) {
    auto schedules = enumerate_schedules(p).schedules;
    for (int d = 2; d <= 4 && d <= static_cast<int>(p.size()); ++d) {
      // all d-arrangements, admissible or not
      std::vector<std::size_t> idx;
      std::vector<bool> used(p.size(), false);
      std::function<void()> rec = [&]() {
        if (idx.size() == static_cast<std::size_t>(d)) {
          DTuple t;
          for (std::size_t i : idx) t.push_back(p.event_at(i));
          for (const auto& s : schedules)
            if (hits(s, t)) CHECK(is_admissible(p, t));
          return;
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
          if (used[i]) continue;
          used[i] = true;
          idx.push_back(i);
          rec();
          idx.pop_back();
          used[i] = false;
        }
      };
      rec();
    }
  }
}

TEST_CASE("default budget reads the environment once") {
  CHECK(default_budget() >= 1);
}
