#include "hitfam/harness.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hitfam/basic_families.hpp"
#include "hitfam/error.hpp"

namespace hitfam {

namespace {

// Comment-stripped, whitespace-split lines, blank ones removed.
std::vector<std::vector<std::string>> meaningful_lines(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> toks;
    std::string tok;
    while (fields >> tok) toks.push_back(tok);
    if (!toks.empty()) out.push_back(std::move(toks));
  }
  return out;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    fail(errc::parse, what + " is not a number: '" + s + "'");
  }
  if (pos != s.size()) fail(errc::parse, what + " is not a number: '" + s + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

AnnotatedPoset parse_poset_text(const std::string& text, bool repair_transitive) {
  auto lines = meaningful_lines(text);
  std::size_t at = 0;
  auto next = [&]() -> const std::vector<std::string>& {
    if (at >= lines.size()) fail(errc::parse, "unexpected end of poset file");
    return lines[at++];
  };

  {
    const auto& head = next();
    if (head != std::vector<std::string>{"poset", "v1"})
      fail(errc::parse, "poset file must start with 'poset v1'");
  }
  std::size_t n = 0;
  {
    const auto& decl = next();
    if (decl.size() != 2 || decl[0] != "events")
      fail(errc::parse, "expected 'events <n>' after the header");
    n = parse_count(decl[1], "event count");
  }
  std::vector<EventId> events;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& line = next();
    if (line.size() != 2 || line[0] != "event")
      fail(errc::parse, "expected 'event <token>' line " + std::to_string(i + 1) + " of " +
                            std::to_string(n));
    events.push_back(line[1]);
  }

  std::vector<std::pair<EventId, EventId>> edges;
  std::set<std::pair<EventId, EventId>> races;
  while (at < lines.size()) {
    const auto& line = next();
    if (line[0] == "edge" && line.size() == 3) {
      edges.push_back({line[1], line[2]});
    } else if (line[0] == "race" && line.size() == 3) {
      for (const auto& e : {line[1], line[2]})
        if (std::find(events.begin(), events.end(), e) == events.end())
          fail(errc::reference, "race names unknown event '" + e + "'");
      if (line[1] == line[2]) fail(errc::parse, "race pairs two copies of '" + line[1] + "'");
      races.insert(std::minmax(line[1], line[2]));
    } else {
      fail(errc::parse, "unrecognized line starting with '" + line[0] + "'");
    }
  }

  AnnotatedPoset ap;
  ap.poset = Poset::from_cover_edges("input", std::move(events), std::move(edges),
                                     repair_transitive);
  ap.races.assign(races.begin(), races.end());
  return ap;
}

std::string serialize_poset_text(const AnnotatedPoset& ap) {
  std::ostringstream out;
  out << "poset v1\n";
  out << "events " << ap.poset.size() << "\n";
  for (const auto& e : ap.poset.events()) out << "event " << e << "\n";
  for (const auto& [a, b] : ap.poset.cover_edges()) out << "edge " << a << " " << b << "\n";
  for (const auto& [a, b] : ap.races) out << "race " << a << " " << b << "\n";
  return out.str();
}

ParsedFamily parse_family_text(const std::string& text) {
  auto lines = meaningful_lines(text);
  if (lines.empty()) fail(errc::parse, "unexpected end of family file");
  const auto& head = lines[0];
  if (head.size() != 3 || head[0] != "family" || head[1] != "v1" ||
      head[2].rfind("d=", 0) != 0)
    fail(errc::parse, "family file must start with 'family v1 d=<k>'");
  ParsedFamily f;
  f.d = static_cast<int>(parse_count(head[2].substr(2), "tuple size"));
  if (f.d < 2) fail(errc::parse, "family tuple size must be at least 2");
  for (std::size_t i = 1; i < lines.size(); ++i) f.rows.push_back(lines[i]);
  return f;
}

std::string serialize_family_text(const Family& f, int d, const std::string& header_comment) {
  std::ostringstream out;
  out << "family v1 d=" << d << "\n";
  if (!header_comment.empty()) out << "# " << header_comment << "\n";
  for (const auto& row : f.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
    out << "\n";
  }
  return out.str();
}

Family pruned_family(const AnnotatedPoset& ap, int d, std::size_t* rows_before_dedup) {
  if (d != 3) fail(errc::unsupported_depth, "race pruning is defined for d = 3 only");
  const Poset& tree = ap.poset;
  tree_root(tree);  // shape gate
  Schedule ldfs = left_dfs(tree);
  Schedule rdfs = right_dfs(tree);

  std::vector<bool> racing(tree.size(), false);
  for (const auto& [a, b] : ap.races) {
    racing[tree.index_of(a)] = true;
    racing[tree.index_of(b)] = true;
  }

  Family f{tree.name(), {}};
  std::set<Schedule> seen;
  std::size_t raw = 0;
  for (std::size_t piv = 0; piv < tree.size(); ++piv) {
    if (!racing[piv]) continue;
    // Root-down ancestor chain of the pivot; trees have at most one
    // immediate predecessor per event.
    std::vector<std::size_t> chain;
    for (std::size_t cur = piv;;) {
      chain.push_back(cur);
      const auto& preds = tree.cover_predecessors()[cur];
      if (preds.empty()) break;
      cur = preds[0];
    }
    for (const Schedule* completion : {&ldfs, &rdfs}) {
      Schedule row;
      std::vector<bool> scheduled(tree.size(), false);
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        scheduled[*it] = true;
        row.push_back(tree.event_at(*it));
      }
      for (const auto& e : *completion)
        if (!scheduled[tree.index_of(e)]) row.push_back(e);
      ++raw;
      if (seen.insert(row).second) f.rows.push_back(std::move(row));
    }
  }
  if (rows_before_dedup) *rows_before_dedup = raw;
  return f;
}

}  // namespace hitfam
