#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "golden.hpp"
#include "qdmr/graph.hpp"
#include "qdmr/random_program.hpp"

using namespace qdmr;

namespace {

std::set<std::pair<int, int>> edge_set(const DecompositionGraph& g) {
  std::set<std::pair<int, int>> out;
  for (const auto& e : g.edges) out.insert({e.from, e.to});
  return out;
}

bool isomorphic(const DecompositionGraph& a, const DecompositionGraph& b) {
  if (a.size() != b.size() || a.edges.size() != b.edges.size()) return false;
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 1);
  auto eb = edge_set(b);
  do {
    bool ok = true;
    for (const auto& e : a.edges)
      if (!eb.count({perm[e.from - 1], perm[e.to - 1]})) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("comparative row graph") {
  auto g = to_graph(parse_qdmr(operator_rows()[6].qdmr));
  CHECK(g.size() == 4);
  CHECK(edge_set(g) == std::set<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}});
  CHECK(validate(g).empty());
}

TEST_CASE("keywords question is isomorphic to the comparative row") {
  auto a = to_graph(parse_qdmr(operator_rows()[6].qdmr));
  auto b = to_graph(parse_qdmr(kKeywordsQdmr));
  CHECK(isomorphic(a, b));
}

TEST_CASE("validate issues") {
  DecompositionGraph g = to_graph(parse_qdmr("return a ;return b ;return #2"));
  auto issues = validate(g);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].kind == IssueKind::OrphanStep);
  CHECK(issues[0].step == 1);

  g = to_graph(parse_qdmr("return a ;return #1"));
  g.edges.push_back(g.edges[0]);
  CHECK(validate(g).at(0).kind == IssueKind::DuplicateEdge);

  g = to_graph(parse_qdmr("return a ;return #1"));
  g.nodes[1].index = 3;
  bool gap = false;
  for (const auto& i : validate(g)) gap |= i.kind == IssueKind::IndexGap;
  CHECK(gap);
}

TEST_CASE("renderings") {
  auto g = to_graph(parse_qdmr("return flights ;return #1 from toronto"));
  auto adj = to_adjacency(g);
  CHECK(adj.find("1 -> 2") != std::string::npos);
  CHECK(to_dot(g).rfind("digraph", 0) == 0);
  CHECK(to_json(g).find("\"edges\"") != std::string::npos);
}

TEST_CASE("graph invariants on generated programs") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto d = parse_qdmr(random_program(seed).qdmr_text);
    auto g = to_graph(d);
    REQUIRE(g.size() == d.size());
    for (int i = 0; i < g.size(); ++i) CHECK(g.nodes[i].index == i + 1);
    auto order = topo_order(g);
    for (const auto& e : g.edges) {
      CHECK(e.from < e.to);
      auto pf = std::find(order.begin(), order.end(), e.from), pt = std::find(order.begin(), order.end(), e.to);
      CHECK(pf < pt);
    }
    // node i's inputs are exactly its references
    for (const auto& s : d.steps()) {
      auto parents = g.parents(s.index);
      auto refs = s.refs();
      std::sort(refs.begin(), refs.end());
      std::sort(parents.begin(), parents.end());
      CHECK(parents == refs);
    }
  }
}
