#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qdmr/lexicon.hpp"
#include "qdmr/rulebased.hpp"
#include "support.hpp"

using namespace qdmr;

namespace {

struct Row {
  std::string name, rule, trigger;
  std::vector<std::string> steps;
};

std::vector<std::string> split_on(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  size_t at = 0;
  for (size_t hit; (hit = s.find(sep, at)) != std::string::npos; at = hit + sep.size()) out.push_back(s.substr(at, hit - at));
  out.push_back(s.substr(at));
  return out;
}

std::vector<Row> rows() {
  std::istringstream in(read_fixture("rulebased/expected.tsv"));
  std::vector<Row> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_on(line, "\t");
    out.push_back({cols.at(0), cols.at(1), cols.at(2), split_on(cols.at(3), " | ")});
  }
  return out;
}

DepTree tree_for(const std::string& name) {
  std::string coref;
  std::ifstream probe(fixture("rulebased/" + name + ".coref"));
  if (probe) coref = fixture("rulebased/" + name + ".coref");
  return load_dep_tree(fixture("rulebased/" + name + ".conll"), coref);
}

}  // namespace

TEST_CASE("golden rows") {
  auto all = rows();
  REQUIRE(all.size() == 12);
  int reproduced = 0;
  for (const auto& row : all) {
    INFO(row.name);
    auto tree = tree_for(row.name);
    auto m = match_rule(tree);
    REQUIRE(m.has_value());
    CHECK(to_string(m->rule) == row.rule);
    CHECK(m->site == row.trigger);
    auto steps = decompose_steps(tree);
    CHECK(steps == row.steps);
    reproduced += steps == row.steps;
  }
  CHECK(reproduced == 12);
}

TEST_CASE("no rule on a bare noun phrase") {
  auto tree = parse_conll("1\tcolorado\tcolorado\tNNP\t0\tROOT\n");
  CHECK_FALSE(match_rule(tree).has_value());
  CHECK(decompose_steps(tree) == std::vector<std::string>{"colorado"});
}

TEST_CASE("rule names round trip") {
  for (Rule r : all_rules()) CHECK(rule_from_string(to_string(r)) == r);
  CHECK(all_rules().size() == 12);
  CHECK_THROWS_AS(rule_from_string("nope"), Error);
}

TEST_CASE("outputs are fixpoints with well formed references") {
  for (const auto& row : rows()) {
    INFO(row.name);
    auto tree = tree_for(row.name);
    auto frags = decompose_fragments(tree);
    for (const auto& f : frags) CHECK_FALSE(match_fragment(tree, f).has_value());
    // running again changes nothing
    CHECK(decompose_fragments(tree).size() == frags.size());
    auto d = decompose(tree);
    CHECK(d.size() == static_cast<int>(frags.size()));
    for (const auto& s : d.steps())
      for (int k : s.refs()) CHECK(k < s.index);
  }
}

TEST_CASE("outputs stay inside the question lexicon") {
  for (const auto& row : rows()) {
    INFO(row.name);
    auto tree = tree_for(row.name);
    auto lex = build_lexicon(Question{row.name, tree.text()}, 20);
    auto d = decompose(tree);
    for (const auto& s : d.steps()) {
      auto v = check_lexicon(s, lex);
      CHECK_MESSAGE(v.empty(), s.text());
    }
  }
}

TEST_CASE("split limit") {
  auto tree = tree_for("acl-verb");  // two splits
  CHECK_THROWS_AS(decompose_fragments(tree, 1), Error);
  CHECK(decompose_fragments(tree, 2).size() == 3);
  CHECK_THROWS_AS(decompose_fragments(tree_for("multi-prep"), 0), Error);
}

TEST_CASE("bad trees are rejected") {
  CHECK_THROWS_AS(parse_conll("1\ta\ta\tDT\t5\tdet\n"), Error);
  CHECK_THROWS_AS(parse_conll("1\ta\ta\tDT\t0\tROOT\n2\tb\tb\tNN\t0\tROOT\n"), Error);
}
