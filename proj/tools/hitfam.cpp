#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hitfam/antichain.hpp"
#include "hitfam/basic_families.hpp"
#include "hitfam/doubletree.hpp"
#include "hitfam/error.hpp"
#include "hitfam/harness.hpp"
#include "hitfam/oracle.hpp"
#include "hitfam/patterns.hpp"
#include "hitfam/poset.hpp"

using nlohmann::ordered_json;
using namespace hitfam;

namespace {

// Exit classes: 1 usage, 2 unreadable input, 3 budget or infeasibility,
// 4 verification failure (handled where the report is inspected).
int exit_code_for(errc c) {
  switch (c) {
    case errc::parse:
    case errc::cycle:
    case errc::reference:
    case errc::transitive_edge:
    case errc::collision:
    case errc::missing_event:
    case errc::invalid_family:
      return 2;
    case errc::infeasible:
    case errc::budget:
    case errc::pool_exhausted:
    case errc::generation_failed:
      return 3;
    default:
      return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::parse, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void usage_fail(const std::string& msg) { fail(errc::invalid_size, msg); }

GreedyPool auto_pool(const Poset& p, std::uint64_t seed) {
  // Exact set-cover when the schedule space is small enough to enumerate,
  // sampled pool otherwise.
  return enumerate_schedules(p, 20000).overflowed ? GreedyPool::Sampled(256, seed)
                                                  : GreedyPool::Exact();
}

std::size_t height_of_power(std::size_t n) {
  std::size_t h = 0;
  while ((std::size_t{1} << (h + 1)) < n) ++h;
  if ((std::size_t{1} << (h + 1)) != n || n < 2)
    usage_fail("the leaf construction needs n to be a power of two, got n=" + std::to_string(n));
  return h + 1;
}

int emit_family(const Poset& poset, const Family& fam, int d, const std::string& header_comment,
                bool verify, const std::string& out_path) {
  if (verify) {
    VerifyReport rep = is_d_hitting(poset, fam, d);
    if (!rep.is_hitting) {
      std::cerr << "hitfam: family misses admissible tuple:";
      for (const auto& e : *rep.first_missed) std::cerr << " " << e;
      std::cerr << "\n";
      return 4;
    }
  }
  std::string text = serialize_family_text(fam, d, header_comment);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << text)) usage_fail("cannot write '" + out_path + "'");
  }
  return 0;
}

struct GenArgs {
  std::string shape, method, poset_path, out_path;
  std::size_t n = 0, height = 0;
  int d = 0;
  std::uint64_t seed = 1;
  bool verify = false, repair = false, dump_patterns = false;
  bool has_n = false, has_height = false;
};

int run_gen(const GenArgs& a) {
  if (a.poset_path.empty() && a.shape.empty())
    usage_fail("gen needs either --shape or --poset");

  Poset poset;
  Family fam;
  std::string header_comment;

  if (!a.poset_path.empty()) {
    AnnotatedPoset ap = parse_poset_text(read_file(a.poset_path), a.repair);
    poset = ap.poset;
    if (a.method == "warmup") {
      fam = warmup_family(poset, a.d);
    } else if (a.method == "pruned") {
      fam = pruned_family(ap, a.d);
    } else if (a.method == "greedy") {
      fam = greedy_family(poset, a.d, auto_pool(poset, a.seed));
    } else {
      usage_fail("--poset supports methods warmup, pruned, greedy; got '" + a.method + "'");
    }
    return emit_family(poset, fam, a.d, header_comment, a.verify, a.out_path);
  }

  const bool wants_n = a.shape == "chain" || a.shape == "antichain" || a.shape == "chainplus";
  if (wants_n && (!a.has_n || a.has_height))
    usage_fail("--shape " + a.shape + " takes --n, not --height");
  if (!wants_n && (!a.has_height || a.has_n))
    usage_fail("--shape " + a.shape + " takes --height, not --n");

  auto reject = [&]() {
    usage_fail("method '" + a.method + "' does not apply to shape '" + a.shape + "'");
  };
  auto need_d = [&](int d) {
    if (a.d != d)
      usage_fail("method '" + a.method + "' builds " + std::to_string(d) +
                 "-hitting families; got --d " + std::to_string(a.d));
  };

  if (a.shape == "chain") {
    poset = make_chain(a.n);
    if (a.method == "dfs") {
      need_d(2);
      fam = dfs_family(poset);
    } else if (a.method == "warmup") {
      fam = warmup_family(poset, a.d);
    } else if (a.method == "greedy") {
      fam = greedy_family(poset, a.d, auto_pool(poset, a.seed));
    } else {
      reject();
    }
  } else if (a.shape == "antichain") {
    poset = make_antichain(a.n);
    if (a.method == "doubletree") {
      need_d(3);
      fam = antichain_family_from_leaves(height_of_power(a.n));
    } else if (a.method == "random") {
      fam = random_family(a.n, a.d, a.seed).family;
    } else if (a.method == "greedy") {
      fam = greedy_family(poset, a.d, auto_pool(poset, a.seed));
    } else {
      reject();
    }
  } else if (a.shape == "tree") {
    poset = make_complete_tree(a.height);
    if (a.method == "dfs") {
      need_d(2);
      fam = dfs_family(poset);
    } else if (a.method == "warmup") {
      fam = warmup_family(poset, a.d);
    } else if (a.method == "doubletree") {
      need_d(3);
      fam = tree_family(a.height);
    } else if (a.method == "pattern") {
      if (a.dump_patterns)
        for (const Pattern& p : enumerate_patterns(a.d, a.height))
          std::cerr << p.canonical_key() << "\n";
      fam = pattern_family(a.d, a.height);
    } else if (a.method == "greedy") {
      fam = greedy_family(poset, a.d, auto_pool(poset, a.seed));
    } else {
      reject();
    }
  } else if (a.shape == "doubletree") {
    poset = make_double_tree(a.height);
    if (a.method == "doubletree") {
      need_d(3);
      MMatrix m = build_m_matrix(a.height);
      header_comment = "M h=" + std::to_string(m.h) +
                       " block_width=" + std::to_string(m.block_width);
      fam = doubletree_family(a.height);
    } else if (a.method == "greedy") {
      fam = greedy_family(poset, a.d, auto_pool(poset, a.seed));
    } else {
      reject();
    }
  } else if (a.shape == "chainplus") {
    poset = make_chain_plus_event(a.n);
    if (a.method == "warmup") {
      fam = chain_event_family(a.n, a.d);
    } else if (a.method == "greedy") {
      fam = greedy_family(poset, a.d, auto_pool(poset, a.seed));
    } else {
      reject();
    }
  }
  return emit_family(poset, fam, a.d, header_comment, a.verify, a.out_path);
}

int run_verify(const std::string& poset_path, const std::string& family_path, int d,
               bool repair) {
  AnnotatedPoset ap = parse_poset_text(read_file(poset_path), repair);
  ParsedFamily pf = parse_family_text(read_file(family_path));
  if (pf.d != d)
    usage_fail("family file declares d=" + std::to_string(pf.d) + ", got --d " +
               std::to_string(d));
  Family fam{ap.poset.name(), pf.rows};
  VerifyReport rep = is_d_hitting(ap.poset, fam, d);
  if (!rep.is_hitting) {
    std::cerr << "hitfam: family misses admissible tuple:";
    for (const auto& e : *rep.first_missed) std::cerr << " " << e;
    std::cerr << "\n";
    return 4;
  }
  std::cout << "ok: " << fam.rows.size() << " rows hit all " << rep.admissible_count
            << " admissible " << d << "-tuples\n";
  return 0;
}

int run_bounds(std::size_t n, int d) {
  BoundsReport r = bounds_report(n, d);
  ordered_json j{{"shape", "antichain"},
                 {"n", r.n},
                 {"d", r.d},
                 {"lower", r.lower},
                 {"lower_d3", r.lower_d3},
                 {"greedy_upper", r.greedy_upper},
                 {"probabilistic_rows", r.probabilistic_rows},
                 {"slope", r.slope}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_stats(const std::string& poset_path, bool repair) {
  AnnotatedPoset ap = parse_poset_text(read_file(poset_path), repair);
  ordered_json j{{"n_events", ap.poset.size()},
                 {"height", longest_chain_length(ap.poset)},
                 {"races", ap.races.size()}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"d-hitting schedule families for partial orders"};
  app.require_subcommand(1);

  GenArgs g;
  CLI::App* gen = app.add_subcommand("gen", "construct a family and print it");
  auto* shape_opt =
      gen->add_option("--shape", g.shape, "chain|antichain|tree|doubletree|chainplus")
          ->check(CLI::IsMember({"chain", "antichain", "tree", "doubletree", "chainplus"}));
  auto* n_opt = gen->add_option("--n", g.n, "event count for chain/antichain/chainplus");
  auto* height_opt = gen->add_option("--height", g.height, "height for tree/doubletree");
  gen->add_option("--d", g.d, "tuple size to hit")->required();
  gen->add_option("--method", g.method, "dfs|warmup|doubletree|pattern|greedy|random|pruned")
      ->required()
      ->check(CLI::IsMember({"dfs", "warmup", "doubletree", "pattern", "greedy", "random",
                             "pruned"}));
  gen->add_option("--seed", g.seed, "seed for random/sampled constructions");
  gen->add_flag("--verify", g.verify, "re-check the family with the oracle before printing");
  gen->add_option("--out", g.out_path, "write the family here instead of standard output");
  auto* poset_opt = gen->add_option("--poset", g.poset_path, "read the poset from a file");
  gen->add_flag("--repair-transitive", g.repair, "drop redundant edges instead of failing");
  gen->add_flag("--dump-patterns", g.dump_patterns,
                "with --method pattern: list pattern keys on standard error");
  poset_opt->excludes(shape_opt)->excludes(n_opt)->excludes(height_opt);

  std::string v_poset, v_family;
  int v_d = 0;
  bool v_repair = false;
  CLI::App* verify = app.add_subcommand("verify", "check a family file against a poset file");
  verify->add_option("--poset", v_poset)->required();
  verify->add_option("--family", v_family)->required();
  verify->add_option("--d", v_d)->required();
  verify->add_flag("--repair-transitive", v_repair);

  std::string b_shape;
  std::size_t b_n = 0;
  int b_d = 0;
  CLI::App* bounds = app.add_subcommand("bounds", "size bounds for antichain families");
  bounds->add_option("--shape", b_shape)->required()->check(CLI::IsMember({"antichain"}));
  bounds->add_option("--n", b_n)->required();
  bounds->add_option("--d", b_d)->required();

  std::string s_poset;
  bool s_repair = false;
  CLI::App* stats = app.add_subcommand("stats", "report event count, height, races");
  stats->add_option("--poset", s_poset)->required();
  stats->add_flag("--repair-transitive", s_repair);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      g.has_n = n_opt->count() > 0;
      g.has_height = height_opt->count() > 0;
      return run_gen(g);
    }
    if (verify->parsed()) return run_verify(v_poset, v_family, v_d, v_repair);
    if (bounds->parsed()) return run_bounds(b_n, b_d);
    if (stats->parsed()) return run_stats(s_poset, s_repair);
  } catch (const error& e) {
    std::cerr << "hitfam: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return 1;
}
