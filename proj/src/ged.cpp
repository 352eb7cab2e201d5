// Exact graph edit distance between decomposition graphs, plus the variant
// with node merges and splits. Both are best-first searches over node
// correspondences, g1 nodes taken in index order.
#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <queue>
#include <set>

#include "qdmr/errors.hpp"
#include "qdmr/metrics.hpp"

namespace qdmr {

namespace {

struct Dense {
  int n = 0;
  std::vector<std::vector<std::string>> toks;
  std::vector<std::vector<bool>> adj;  // adj[a][b]: edge a -> b
  int edge_count = 0;
};

Dense dense(const DecompositionGraph& g) {
  Dense d;
  d.n = g.size();
  std::map<int, int> pos;
  for (int i = 0; i < d.n; ++i) {
    pos[g.nodes[i].index] = i;
    std::vector<std::string> t;
    for (const auto& tok : g.nodes[i].tokens) t.push_back(tok.str());
    d.toks.push_back(std::move(t));
  }
  d.adj.assign(d.n, std::vector<bool>(d.n, false));
  for (const auto& e : g.edges) {
    auto a = pos.find(e.from), b = pos.find(e.to);
    if (a == pos.end() || b == pos.end()) continue;
    if (!d.adj[a->second][b->second]) {
      d.adj[a->second][b->second] = true;
      ++d.edge_count;
    }
  }
  return d;
}

std::vector<std::vector<double>> sub_costs(const Dense& a, const Dense& b) {
  std::vector<std::vector<double>> c(a.n, std::vector<double>(b.n));
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j) c[i][j] = 1.0 - align_ratio(a.toks[i], b.toks[j]);
  return c;
}

struct GedState {
  double f = 0, g = 0;
  int depth = 0;
  std::uint32_t used = 0;
  int preserved = 0;
  bool done = false;
  std::vector<std::int8_t> assign;
};

struct ByF {
  bool operator()(const GedState& x, const GedState& y) const {
    if (x.f != y.f) return x.f > y.f;
    if (x.done != y.done) return !x.done;
    return x.depth < y.depth;
  }
};

}  // namespace

double ged_cost(const DecompositionGraph& ga, const DecompositionGraph& gb, const GedOptions& opts) {
  if (ga.size() > opts.node_limit || gb.size() > opts.node_limit)
    throw Error("TooLarge", "graph edit distance limited to " + std::to_string(opts.node_limit) + " nodes");
  Dense a = dense(ga), b = dense(gb);
  auto sub = sub_costs(a, b);

  auto heuristic = [&](const GedState& s) {
    int r1 = a.n - s.depth;
    int r2 = b.n - std::popcount(s.used);
    double h = std::abs(r1 - r2);
    // E2 edges among already used nodes that were not preserved
    int fixed = 0;
    for (int x = 0; x < b.n; ++x)
      for (int y = 0; y < b.n; ++y)
        if (b.adj[x][y] && (s.used >> x & 1) && (s.used >> y & 1)) ++fixed;
    h += fixed - s.preserved;
    // E1 edges from a deleted node to a node not yet placed
    for (int x = 0; x < s.depth; ++x)
      if (s.assign[x] < 0)
        for (int y = s.depth; y < a.n; ++y) h += a.adj[x][y] + a.adj[y][x];
    return h;
  };

  std::priority_queue<GedState, std::vector<GedState>, ByF> open;
  GedState start;
  start.f = heuristic(start);
  open.push(start);
  while (!open.empty()) {
    GedState s = open.top();
    open.pop();
    if (s.done) return s.g;
    if (s.depth == a.n) {
      GedState t = s;
      t.done = true;
      t.g += (b.n - std::popcount(s.used)) + (b.edge_count - s.preserved);
      t.f = t.g;
      open.push(std::move(t));
      continue;
    }
    int i = s.depth;
    for (int target = -1; target < b.n; ++target) {
      if (target >= 0 && (s.used >> target & 1)) continue;
      GedState t = s;
      t.assign.push_back(static_cast<std::int8_t>(target));
      t.depth = i + 1;
      t.g += target < 0 ? 1.0 : sub[i][target];
      if (target >= 0) t.used |= 1u << target;
      for (int k = 0; k < i; ++k) {
        for (int dir = 0; dir < 2; ++dir) {
          int x = dir ? k : i, y = dir ? i : k;
          if (!a.adj[x][y]) continue;
          int mx = t.assign[x], my = t.assign[y];
          if (mx >= 0 && my >= 0 && b.adj[mx][my])
            ++t.preserved;
          else
            t.g += 1;
        }
        if (target >= 0 && t.assign[k] > target) t.g += 1;  // crossing
      }
      t.f = t.g + heuristic(t);
      open.push(std::move(t));
    }
  }
  return 0;
}

double ged(const DecompositionGraph& a, const DecompositionGraph& b, const GedOptions& opts) {
  double size = std::max(a.size() + static_cast<int>(a.edges.size()), b.size() + static_cast<int>(b.edges.size()));
  if (size == 0) return 0;
  return std::min(1.0, ged_cost(a, b, opts) / size);
}

namespace {

struct Group {
  std::vector<int> left;  // g1 nodes, ascending
  std::uint32_t right = 0;
};

struct PlusState {
  double f = 0;
  double lower = 0;  // deletions + crossings + final split costs
  int depth = 0;
  bool done = false;
  std::uint32_t used = 0;
  std::vector<std::int8_t> group_of;  // per g1 node, -1 deleted
  std::vector<Group> groups;
};

struct PlusByF {
  bool operator()(const PlusState& x, const PlusState& y) const {
    if (x.f != y.f) return x.f > y.f;
    if (x.done != y.done) return !x.done;
    return x.depth < y.depth;
  }
};

std::vector<int> bits(std::uint32_t m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

std::vector<std::string> concat(const Dense& d, const std::vector<int>& nodes) {
  std::vector<std::string> out;
  for (int x : nodes) out.insert(out.end(), d.toks[x].begin(), d.toks[x].end());
  return out;
}

double group_cost(const Dense& a, const Dense& b, const Group& g) {
  auto right = bits(g.right);
  if (g.left.size() == 1 && right.size() == 1) return 1.0 - align_ratio(a.toks[g.left[0]], b.toks[right[0]]);
  if (right.size() == 1) return g.left.size() * (1.0 - align_ratio(b.toks[right[0]], concat(a, g.left)));
  return right.size() * (1.0 - align_ratio(a.toks[g.left[0]], concat(b, right)));
}

int crossings_with(const PlusState& s, int u, std::uint32_t right) {
  int c = 0;
  for (int k = 0; k < static_cast<int>(s.group_of.size()); ++k) {
    if (s.group_of[k] < 0 || k == u) continue;
    for (int v1 : bits(s.groups[s.group_of[k]].right))
      for (int v2 : bits(right)) c += (k < u && v1 > v2) || (k > u && v1 < v2);
  }
  return c;
}

double complete_cost(const Dense& a, const Dense& b, const PlusState& s) {
  double cost = 0;
  int deleted = 0;
  for (auto g : s.group_of) deleted += g < 0;
  cost += deleted + (b.n - std::popcount(s.used));
  for (const auto& g : s.groups) cost += group_cost(a, b, g);

  int groups = static_cast<int>(s.groups.size());
  std::vector<int> id_a(a.n), id_b(b.n);
  for (int x = 0; x < a.n; ++x) id_a[x] = s.group_of[x] >= 0 ? s.group_of[x] : groups + x;
  for (int y = 0; y < b.n; ++y) id_b[y] = groups + a.n + y;
  for (int gi = 0; gi < groups; ++gi)
    for (int y : bits(s.groups[gi].right)) id_b[y] = gi;
  std::set<std::pair<int, int>> e1, e2;
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (a.adj[x][y] && id_a[x] != id_a[y]) e1.insert({id_a[x], id_a[y]});
  for (int x = 0; x < b.n; ++x)
    for (int y = 0; y < b.n; ++y)
      if (b.adj[x][y] && id_b[x] != id_b[y]) e2.insert({id_b[x], id_b[y]});
  int kept = 0;
  for (const auto& e : e1) kept += e2.count(e);
  cost += e1.size() + e2.size() - 2.0 * kept;

  // crossings over every pair of correspondences
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < a.n; ++x)
    if (s.group_of[x] >= 0)
      for (int y : bits(s.groups[s.group_of[x]].right)) pairs.emplace_back(x, y);
  for (size_t i = 0; i < pairs.size(); ++i)
    for (size_t j = i + 1; j < pairs.size(); ++j) {
      auto [u1, v1] = pairs[i];
      auto [u2, v2] = pairs[j];
      cost += (u1 < u2 && v1 > v2) || (u1 > u2 && v1 < v2);
    }
  return cost;
}

}  // namespace

double ged_plus(const DecompositionGraph& ga, const DecompositionGraph& gb) {
  if (ga.size() > kGedPlusNodeLimit || gb.size() > kGedPlusNodeLimit)
    throw Error("Skipped", "merge/split edit distance limited to " + std::to_string(kGedPlusNodeLimit) + " nodes");
  Dense a = dense(ga), b = dense(gb);

  std::priority_queue<PlusState, std::vector<PlusState>, PlusByF> open;
  open.push(PlusState{});
  while (!open.empty()) {
    PlusState s = open.top();
    open.pop();
    if (s.done) return s.f;
    if (s.depth == a.n) {
      s.done = true;
      s.f = complete_cost(a, b, s);
      open.push(std::move(s));
      continue;
    }
    int u = s.depth;
    std::uint32_t all = (b.n == 32 ? ~0u : (1u << b.n) - 1);
    std::uint32_t free = all & ~s.used;

    PlusState del = s;
    del.group_of.push_back(-1);
    del.depth = u + 1;
    del.lower += 1;
    del.f = del.lower;
    open.push(std::move(del));

    // new group on a nonempty subset of free g2 nodes
    for (std::uint32_t sub = free; sub; sub = (sub - 1) & free) {
      PlusState t = s;
      t.group_of.push_back(static_cast<std::int8_t>(t.groups.size()));
      t.groups.push_back({{u}, sub});
      t.used |= sub;
      t.depth = u + 1;
      t.lower += crossings_with(t, u, sub);
      if (std::popcount(sub) > 1) t.lower += group_cost(a, b, t.groups.back());
      t.f = t.lower;
      open.push(std::move(t));
    }
    // join an existing group with a single g2 node (merge)
    for (size_t gi = 0; gi < s.groups.size(); ++gi) {
      if (std::popcount(s.groups[gi].right) != 1) continue;
      PlusState t = s;
      t.group_of.push_back(static_cast<std::int8_t>(gi));
      t.groups[gi].left.push_back(u);
      t.depth = u + 1;
      t.lower += crossings_with(t, u, t.groups[gi].right);
      t.f = t.lower;
      open.push(std::move(t));
    }
  }
  return 0;
}

}  // namespace qdmr
