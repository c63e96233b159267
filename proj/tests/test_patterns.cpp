#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hitfam/oracle.hpp"
#include "hitfam/patterns.hpp"
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

Pattern chain_pattern_d3() {
  Pattern p;
  p.d = 3;
  p.parent = {-1, 0, 1};
  p.sib = {-1, -1, -1};
  p.heval = {0, 1, -1};
  p.patsch = {0, 1, 2};
  return p;
}

}  // namespace

TEST_CASE("enumeration counts, validity, and key uniqueness") {
  struct Row {
    int d;
    std::size_t h;
    std::size_t count;
  };
  for (Row r : {Row{2, 1, 3}, {2, 2, 6}, {3, 1, 2}, {3, 2, 29}, {3, 3, 81}, {4, 2, 150}}) {
    auto ps = enumerate_patterns(r.d, r.h);
    CHECK(ps.size() == r.count);
    std::set<std::string> keys;
    for (const auto& p : ps) {
      CHECK(is_valid_pattern(p, r.h));
      CHECK(p.d == r.d);
      keys.insert(p.canonical_key());
    }
    CHECK(keys.size() == r.count);
  }
  // Crude closed-form cap on the two counts given above it.
  CHECK(enumerate_patterns(2, 1).size() <= 128);
  CHECK(enumerate_patterns(3, 2).size() <= 163840);
}

TEST_CASE("enumeration argument and budget errors") {
  CHECK(code_of([] { enumerate_patterns(1, 2); }) == errc::invalid_depth);
  CHECK(code_of([] { enumerate_patterns(3, 0); }) == errc::invalid_size);
  CHECK(code_of([] { enumerate_patterns(3, 2, 0); }) == errc::invalid_size);
  CHECK(code_of([] { enumerate_patterns(3, 2, 28); }) == errc::budget);
  // Exactly at the count is fine.
  CHECK(enumerate_patterns(3, 2, 29).size() == 29);
  try {
    enumerate_patterns(3, 2, 10);
    REQUIRE(false);
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("163840") != std::string::npos);
  }
}

TEST_CASE("pattern validity rejects each broken field") {
  Pattern p = chain_pattern_d3();
  CHECK(is_valid_pattern(p, 2));
  CHECK(!is_valid_pattern(p, 1));  // heval 1 needs height 2

  Pattern q = p;
  q.heval = {1, 0, -1};  // not increasing along ancestry
  CHECK(!is_valid_pattern(q, 2));
  q = p;
  q.heval = {0, -1, -1};  // non-leaf marked as leaf
  CHECK(!is_valid_pattern(q, 2));
  q = p;
  q.patsch = {0, 2, 1};  // child before its parent
  CHECK(!is_valid_pattern(q, 2));
  q = p;
  q.sib = {-1, 0, -1};  // sib on an only child
  CHECK(!is_valid_pattern(q, 2));
  q = p;
  q.parent = {-1, 0, 0};  // cherry needs sib values on both leaves
  CHECK(!is_valid_pattern(q, 2));
  q.sib = {-1, 0, 1};
  q.heval = {0, -1, -1};
  CHECK(is_valid_pattern(q, 2));
  q.sib = {-1, 1, 0};  // sides swapped against id order
  CHECK(!is_valid_pattern(q, 2));

  Pattern tiny;
  tiny.d = 3;
  tiny.parent = {-1, 0};
  tiny.sib = {-1, -1};
  tiny.heval = {0, -1};
  tiny.patsch = {0, 1};
  CHECK(!is_valid_pattern(tiny, 2));  // two nodes cannot carry a triple
  tiny.d = 2;
  CHECK(is_valid_pattern(tiny, 2));

  // Parent ids must point backwards; this one is not in preorder.
  Pattern noncanon;
  noncanon.d = 3;
  noncanon.parent = {-1, 0, 0, 1, 1};
  noncanon.sib = {-1, 0, 1, 0, 1};
  noncanon.heval = {0, 1, -1, -1, -1};
  noncanon.patsch = {0, 1, 2, 3, 4};
  CHECK(!is_valid_pattern(noncanon, 2));  // children of 0 are 1 and 2, but 1's subtree is {3,4}
  noncanon.parent = {-1, 0, 1, 1, 0};
  noncanon.sib = {-1, 0, 0, 1, 1};
  CHECK(is_valid_pattern(noncanon, 2));
}

TEST_CASE("pattern of a tuple, smallest worked cases") {
  Poset t2 = make_complete_tree(2);
  Pattern p = pattern_of_tuple(t2, {"00", "01", "11"});
  CHECK(p.d == 3);
  CHECK(p.parent == std::vector<int>{-1, 0, 1, 1, 0});
  CHECK(p.sib == std::vector<int>{-1, 0, 0, 1, 1});
  CHECK(p.heval == std::vector<int>{0, 1, -1, -1, -1});
  CHECK(p.patsch == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(is_valid_pattern(p, 2));

  Poset t1 = make_complete_tree(1);
  CHECK(lca_closure(t1, {"0", "1"}).size() == 3);
  Pattern q = pattern_of_tuple(t1, {"0", "1"});
  CHECK(q.size() == 3);  // 2d - 1, the most a pair can close to
  CHECK(q.parent == std::vector<int>{-1, 0, 0});
  CHECK(q.sib == std::vector<int>{-1, 0, 1});
  CHECK(q.heval == std::vector<int>{0, -1, -1});
  CHECK(q.patsch == std::vector<int>{0, 1, 2});

  CHECK(code_of([&] { pattern_of_tuple(make_chain(3), {"1", "2"}); }) == errc::shape);
  CHECK(code_of([&] { pattern_of_tuple(t1, {"0", "e"}); }) == errc::inadmissible);
}

TEST_CASE("conformance, round trips and refusals") {
  Poset t2 = make_complete_tree(2);
  for (int d : {2, 3}) {
    for (const auto& t : enumerate_admissible(t2, d)) {
      Pattern p = pattern_of_tuple(t2, t);
      CHECK(conforms(t2, t, p));
    }
  }

  DTuple t = {"00", "01", "11"};
  Pattern p = pattern_of_tuple(t2, t);
  Pattern rev = p;
  std::reverse(rev.patsch.begin(), rev.patsch.end());
  CHECK(!conforms(t2, t, rev));

  CHECK(!conforms(t2, {"00", "01"}, p));        // wrong tuple size
  CHECK(!conforms(t2, {"00", "00", "11"}, p));  // repeated event
  CHECK(!conforms(t2, t, chain_pattern_d3()));  // closure has 5 nodes, pattern 3
  CHECK(conforms(t2, {"00", "01", "1"}, p));    // different tuple, same pattern
  CHECK(!conforms(t2, {"10", "11", "01"}, p));  // mirrored into the wrong branch
  CHECK(!conforms(t2, {"01", "00", "11"}, p));  // right nodes, wrong visit order
  Pattern m = pattern_of_tuple(t2, {"01", "00", "11"});
  CHECK(m.sib == std::vector<int>{-1, 0, 0, 1, 1});  // sides come from the tree, not the tuple
  CHECK(m.patsch == std::vector<int>{0, 1, 3, 2, 4});
  CHECK(conforms(t2, {"01", "00", "11"}, m));

  CHECK(code_of([&] { conforms(make_chain(3), {"1", "2"}, p); }) == errc::shape);
}

TEST_CASE("schedules cut from patterns, worked cases") {
  Poset t2 = make_complete_tree(2);
  Pattern p = pattern_of_tuple(t2, {"00", "01", "11"});
  Schedule s = schedule_for_pattern(p, 2);
  CHECK(s == Schedule{"e", "0", "00", "01", "1", "10", "11"});
  CHECK(hits(s, DTuple{"00", "01", "11"}));

  Schedule c = schedule_for_pattern(chain_pattern_d3(), 2);
  CHECK(c == Schedule{"e", "0", "1", "00", "01", "10", "11"});

  // Every pattern for (3, 2) cuts into a valid schedule of the full tree.
  for (const auto& q : enumerate_patterns(3, 2)) {
    Schedule r = schedule_for_pattern(q, 2);
    CHECK(r.size() == 7);
    CHECK(is_valid_schedule(t2, r));
  }

  CHECK(code_of([] { schedule_for_pattern(chain_pattern_d3(), 1); }) == errc::invalid_pattern);
  Pattern deep = chain_pattern_d3();
  deep.heval = {0, 2, -1};
  CHECK(code_of([&] { schedule_for_pattern(deep, 2); }) == errc::invalid_pattern);
  CHECK(schedule_for_pattern(deep, 3).size() == 15);
}

TEST_CASE("conforming tuples are hit by the pattern's schedule") {
  Poset t2 = make_complete_tree(2);
  auto ps = enumerate_patterns(3, 2);
  std::vector<Schedule> cut;
  for (const auto& p : ps) cut.push_back(schedule_for_pattern(p, 2));
  for (const auto& t : enumerate_admissible(t2, 3))
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (conforms(t2, t, ps[i])) CHECK(hits(cut[i], t));
}

TEST_CASE("every admissible tuple is covered by an enumerated pattern") {
  for (std::size_t h : {1, 2, 3}) {
    Poset tr = make_complete_tree(h);
    std::set<std::string> keys;
    for (const auto& p : enumerate_patterns(3, h)) keys.insert(p.canonical_key());
    for (const auto& t : enumerate_admissible(tr, 3)) {
      Pattern p = pattern_of_tuple(tr, t);
      CHECK(keys.count(p.canonical_key()) == 1);
      CHECK(conforms(tr, t, p));
    }
  }

  // d = 4: exhaustive on the height-2 tree, sampled on height 3.
  Poset t2 = make_complete_tree(2);
  std::set<std::string> k42;
  for (const auto& p : enumerate_patterns(4, 2)) k42.insert(p.canonical_key());
  for (const auto& t : enumerate_admissible(t2, 4)) {
    Pattern p = pattern_of_tuple(t2, t);
    CHECK(k42.count(p.canonical_key()) == 1);
    CHECK(conforms(t2, t, p));
  }

  Poset t3 = make_complete_tree(3);
  std::set<std::string> k43;
  for (const auto& p : enumerate_patterns(4, 3)) k43.insert(p.canonical_key());
  auto pool = enumerate_admissible(t3, 4);
  std::mt19937 rng(20260822);
  for (int i = 0; i < 500; ++i) {
    const DTuple& t = pool[rng() % pool.size()];
    Pattern p = pattern_of_tuple(t3, t);
    CHECK(k43.count(p.canonical_key()) == 1);
    CHECK(conforms(t3, t, p));
  }
}

TEST_CASE("pattern families: sizes, hitting, determinism") {
  struct Row {
    int d;
    std::size_t h;
    std::size_t rows;
  };
  for (Row r : {Row{2, 2, 5}, {3, 2, 17}, {3, 3, 67}, {4, 2, 80}}) {
    Poset tr = make_complete_tree(r.h);
    Family f = pattern_family(r.d, r.h);
    CHECK(f.poset_ref == tr.name());
    CHECK(f.rows.size() == r.rows);
    CHECK(f.rows.size() <= enumerate_patterns(r.d, r.h).size());
    std::set<Schedule> uniq(f.rows.begin(), f.rows.end());
    CHECK(uniq.size() == f.rows.size());
    for (const auto& row : f.rows) CHECK(is_valid_schedule(tr, row));
    CHECK(is_d_hitting(tr, f, r.d).is_hitting);
    Family again = pattern_family(r.d, r.h);
    CHECK(again.rows == f.rows);
  }
  CHECK(code_of([] { pattern_family(3, 2, 5); }) == errc::budget);
}
