#pragma once

#include <string>
#include <vector>

#include "qdmr/qdmr.hpp"

namespace qdmr {

struct GraphNode {
  int index = 0;
  std::vector<Token> tokens;
  std::string label() const;  // step text

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  int from = 0;  // referenced step j
  int to = 0;    // referencing step i
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
  friend auto operator<=>(const GraphEdge&, const GraphEdge&) = default;
};

// The DAG induced by reference tokens. Fields stay public so callers (and
// validate) can work on hand-edited graphs.
struct DecompositionGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  int size() const { return static_cast<int>(nodes.size()); }
  std::vector<int> parents(int index) const;
  std::vector<int> children(int index) const;
  bool has_edge(int from, int to) const;

  friend bool operator==(const DecompositionGraph&, const DecompositionGraph&) = default;
};

DecompositionGraph to_graph(const Qdmr& d);

enum class IssueKind { OrphanStep, DuplicateEdge, IndexGap };

struct Issue {
  IssueKind kind;
  int step = 0;  // orphan node, edge target, or first missing index
  std::string message;
};

std::string_view to_string(IssueKind k);

/// Warnings only; an empty list means the graph is clean.
std::vector<Issue> validate(const DecompositionGraph& g);

/// Index order, which is topological because every reference points back.
std::vector<int> topo_order(const DecompositionGraph& g);

std::string to_adjacency(const DecompositionGraph& g);  // "i: label" lines, then "j -> i"
std::string to_dot(const DecompositionGraph& g);
std::string to_json(const DecompositionGraph& g);

}  // namespace qdmr
