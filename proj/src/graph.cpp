#include "qdmr/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

#include "qdmr/text.hpp"

namespace qdmr {

std::string GraphNode::label() const {
  std::vector<std::string> parts;
  for (const auto& t : tokens) parts.push_back(t.str());
  return text::join(parts, " ");
}

std::vector<int> DecompositionGraph::parents(int index) const {
  std::vector<int> out;
  for (const auto& e : edges)
    if (e.to == index) out.push_back(e.from);
  return out;
}

std::vector<int> DecompositionGraph::children(int index) const {
  std::vector<int> out;
  for (const auto& e : edges)
    if (e.from == index) out.push_back(e.to);
  return out;
}

bool DecompositionGraph::has_edge(int from, int to) const {
  return std::find(edges.begin(), edges.end(), GraphEdge{from, to}) != edges.end();
}

DecompositionGraph to_graph(const Qdmr& d) {
  DecompositionGraph g;
  for (const auto& s : d.steps()) {
    g.nodes.push_back({s.index, s.tokens});
    for (int k : s.refs()) g.edges.push_back({k, s.index});
  }
  return g;
}

std::string_view to_string(IssueKind k) {
  switch (k) {
    case IssueKind::OrphanStep: return "OrphanStep";
    case IssueKind::DuplicateEdge: return "DuplicateEdge";
    case IssueKind::IndexGap: return "IndexGap";
  }
  return "?";
}

std::vector<Issue> validate(const DecompositionGraph& g) {
  std::vector<Issue> issues;
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    int want = static_cast<int>(i) + 1;
    if (g.nodes[i].index != want) {
      issues.push_back({IssueKind::IndexGap, want,
                        "expected node " + std::to_string(want) + ", found " +
                            std::to_string(g.nodes[i].index)});
      break;
    }
  }

  std::set<GraphEdge> seen;
  for (const auto& e : g.edges)
    if (!seen.insert(e).second)
      issues.push_back({IssueKind::DuplicateEdge, e.to,
                        "edge " + std::to_string(e.from) + " -> " + std::to_string(e.to) +
                            " listed twice"});

  if (!g.nodes.empty()) {
    // walk backwards from the answer node
    int last = g.nodes.back().index;
    std::set<int> reach{last};
    std::vector<int> stack{last};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int p : g.parents(v))
        if (reach.insert(p).second) stack.push_back(p);
    }
    for (const auto& n : g.nodes)
      if (!reach.count(n.index))
        issues.push_back({IssueKind::OrphanStep, n.index,
                          "step " + std::to_string(n.index) + " never feeds step " +
                              std::to_string(last)});
  }
  return issues;
}

std::vector<int> topo_order(const DecompositionGraph& g) {
  std::vector<int> order;
  for (const auto& n : g.nodes) order.push_back(n.index);
  std::sort(order.begin(), order.end());
  return order;
}

std::string to_adjacency(const DecompositionGraph& g) {
  std::ostringstream out;
  for (const auto& n : g.nodes) out << n.index << ": " << n.label() << "\n";
  for (const auto& e : g.edges) out << e.from << " -> " << e.to << "\n";
  return out.str();
}

namespace {
std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace

std::string to_dot(const DecompositionGraph& g) {
  std::ostringstream out;
  out << "digraph qdmr {\n  rankdir=BT;\n";
  for (const auto& n : g.nodes)
    out << "  n" << n.index << " [label=\"" << n.index << ". " << dot_escape(n.label()) << "\"];\n";
  for (const auto& e : g.edges) out << "  n" << e.from << " -> n" << e.to << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_json(const DecompositionGraph& g) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  j["edges"] = nlohmann::json::array();
  for (const auto& n : g.nodes) j["nodes"].push_back({{"id", n.index}, {"label", n.label()}});
  for (const auto& e : g.edges) j["edges"].push_back({{"from", e.from}, {"to", e.to}});
  return j.dump();
}

}  // namespace qdmr
