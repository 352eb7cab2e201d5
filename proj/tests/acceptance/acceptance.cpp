// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "golden.hpp"
#include "oracles/brute_exec.hpp"
#include "oracles/brute_ged.hpp"
#include "oracles/compositions.hpp"
#include "oracles/dataset_expected.hpp"
#include "qdmr/breakrc.hpp"
#include "qdmr/dataset.hpp"
#include "qdmr/executor.hpp"
#include "qdmr/graph.hpp"
#include "qdmr/metrics.hpp"
#include "qdmr/rulebased.hpp"

using namespace qdmr;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kOracleTol = 1e-9;
constexpr double kSymmetryTol = 1e-12;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fixture(const std::string& rel) { return std::string(QDMR_FIXTURES) + "/" + rel; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Verdict operator_rows_check() {
  auto start = Clock::now();
  int hit = 0;
  for (const auto& row : operator_rows()) {
    auto cls = classify_qdmr(parse_qdmr(row.qdmr));
    bool ok = true;
    for (int s : row.steps) ok = ok && cls[s - 1].instance && cls[s - 1].instance->op == row.op;
    hit += ok;
  }
  double t = seconds_since(start);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d/13 rows, %.3fs", hit, t);
  return {hit == 13 && t < 1.0, buf};
}

std::set<std::pair<int, int>> edges_of(const DecompositionGraph& g) {
  std::set<std::pair<int, int>> out;
  for (const auto& e : g.edges) out.insert({e.from, e.to});
  return out;
}

bool isomorphic(const DecompositionGraph& a, const DecompositionGraph& b) {
  if (a.size() != b.size() || a.edges.size() != b.edges.size()) return false;
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 1);
  auto eb = edges_of(b);
  do {
    bool ok = true;
    for (const auto& e : a.edges) ok = ok && eb.count({perm[e.from - 1], perm[e.to - 1]});
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

Verdict graph_check() {
  auto g = to_graph(parse_qdmr(operator_rows()[6].qdmr));
  bool shape = g.size() == 4 && edges_of(g) == std::set<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}};
  bool iso = isomorphic(g, to_graph(parse_qdmr(kKeywordsQdmr)));
  return {shape && iso, std::string("comparative shape ") + (shape ? "ok" : "wrong") + ", keywords graph " +
                            (iso ? "isomorphic" : "not isomorphic")};
}

Verdict executor_check() {
  auto start = Clock::now();
  int total = 500, agree = 0;
  std::string first;
  for (std::uint64_t seed = 1; seed <= static_cast<std::uint64_t>(total); ++seed) {
    auto p = random_program(seed);
    auto want = brute::run(p);
    bool ok = false;
    try {
      auto got = evaluate_qdmr(KnowledgeBase::parse(p.kb_text), parse_qdmr(p.qdmr_text));
      ok = !want.error && got.sorted_values() == want.values && got.ordered() == want.ordered &&
           (!want.ordered || brute::order_ok(want, got.values()));
    } catch (const StepError& e) {
      ok = want.error && e.kind() == "NonSingleton";
    }
    agree += ok;
    if (!ok && first.empty()) first = " (first disagreement: seed " + std::to_string(seed) + ")";
  }
  double t = seconds_since(start);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d/%d programs agree, %.2fs", agree, total, t);
  return {agree == total && t < 30.0, buf + first};
}

std::vector<Qdmr> fixture_decompositions() {
  std::vector<Qdmr> out;
  for (const auto& row : operator_rows()) out.push_back(parse_qdmr(row.qdmr));
  for (const auto& r : load_break_csv(fixture("dataset/sample.csv")).records) out.push_back(r.decomposition);
  return out;
}

Verdict identities_check() {
  int checked = 0, failed = 0, gp_skipped = 0;
  for (const auto& d : fixture_decompositions()) {
    auto g = to_graph(d);
    ++checked;
    GedOptions whole{std::max(8, static_cast<int>(g.size()))};
    bool ok = exact_match(d, d) == 1 && sari("question", d, d) == 1.0 && ged(g, g, whole) == 0.0;
    if (g.size() <= kGedPlusNodeLimit)
      ok = ok && ged_plus(g, g) == 0.0;
    else
      ++gp_skipped;
    failed += !ok;
  }
  std::mt19937_64 rng(99);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    auto a = to_graph(parse_qdmr(brute::random_decomposition(rng, 5)));
    auto b = to_graph(parse_qdmr(brute::random_decomposition(rng, 5)));
    worst = std::max(worst, std::abs(ged(a, b) - ged(b, a)));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d decompositions, %d failures (%d above the merge/split size limit), max asymmetry %.1e",
                checked, failed, gp_skipped, worst);
  return {failed == 0 && worst <= kSymmetryTol, buf};
}

Verdict ged_oracle_check() {
  const char* a =
      "return flights ;return #1 from atlanta ;return #2 to baltimore ;return #3 on thursday ;return #4 from any airline";
  const char* b = "return flights from atlanta to baltimore ;return #1 on any airline ;return #2 on thursday";
  std::vector<std::pair<DecompositionGraph, DecompositionGraph>> pairs = {
      {to_graph(parse_qdmr(a)), to_graph(parse_qdmr(b))}};
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i)
    pairs.push_back({to_graph(parse_qdmr(brute::random_decomposition(rng, 4))),
                     to_graph(parse_qdmr(brute::random_decomposition(rng, 4)))});
  int ok_ged = 0, ok_plus = 0;
  for (const auto& [x, y] : pairs) {
    ok_ged += std::abs(ged_cost(x, y) - brute::ged_cost(x, y, false)) <= kOracleTol;
    ok_plus += std::abs(ged_plus(x, y) - brute::ged_cost(x, y, true)) <= kOracleTol;
  }
  int n = static_cast<int>(pairs.size());
  char buf[96];
  std::snprintf(buf, sizeof buf, "GED %d/%d, GED+ %d/%d pairs match the enumerator", ok_ged, n, ok_plus, n);
  return {ok_ged == n && ok_plus == n, buf};
}

Verdict rulebased_check() {
  std::istringstream in(slurp(fixture("rulebased/expected.tsv")));
  int rows = 0, hit = 0;
  std::string miss;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    ++rows;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, '\t');) cols.push_back(c);
    std::string name = cols.at(0), want = cols.at(3);
    std::string coref = fixture("rulebased/" + name + ".coref");
    auto tree = load_dep_tree(fixture("rulebased/" + name + ".conll"), fs::exists(coref) ? coref : "");
    std::string got;
    for (const auto& s : decompose_steps(tree)) got += (got.empty() ? "" : " | ") + s;
    if (got == want)
      ++hit;
    else
      miss += " " + name;
  }
  return {rows == 12 && hit == 12, std::to_string(hit) + "/" + std::to_string(rows) + " rows" +
                                       (miss.empty() ? "" : ", wrong:" + miss)};
}

std::optional<fs::path> dataset_dir() {
  std::vector<fs::path> candidates;
  if (const char* env = std::getenv("BREAK_DATASET_DIR")) candidates.emplace_back(env);
  candidates.emplace_back(fs::path(QDMR_DATA_DIR) / "break");
  for (const auto& c : candidates) {
    for (const auto& sub : {c / "QDMR", c})
      if (fs::exists(sub / "train.csv") || fs::exists(sub / "dev.csv")) return sub;
  }
  return std::nullopt;
}

Verdict dataset_check() {
  if (auto dir = dataset_dir()) {
    std::vector<BreakRecord> standard;
    for (const char* f : {"train.csv", "dev.csv"}) {
      if (!fs::exists(*dir / f)) continue;
      for (auto& r : load_break_csv((*dir / f).string()).records)
        if (r.mode == Mode::Standard) standard.push_back(std::move(r));
    }
    auto prev = operator_prevalence(standard);
    auto lengths = length_distribution(standard);
    double rate = compile_rate(standard);
    bool ok = prev.at(Operator::Select) == 1.0 && std::abs(lengths[1] - 0.449) <= 0.015 && rate >= 0.99;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu standard rows from %s: SELECT %.4f, 3-4 steps %.4f (want 0.449 +- 0.015), compiled %.4f",
                  standard.size(), dir->string().c_str(), prev.at(Operator::Select), lengths[1], rate);
    return {ok, buf};
  }
  using namespace sample_stats;
  auto r = load_break_csv(fixture("dataset/sample.csv"));
  auto prev = operator_prevalence(r.records);
  auto lengths = length_distribution(r.records);
  bool ok = static_cast<int>(r.records.size()) == kSampleRows && r.rejects.empty();
  for (const auto& [op, n] : kPrevalence) ok = ok && std::abs(prev.at(op) - static_cast<double>(n) / kSampleRows) < kOracleTol;
  for (size_t b = 0; b < 5; ++b) ok = ok && std::abs(lengths[b] - static_cast<double>(kLengths[b]) / kSampleRows) < kOracleTol;
  ok = ok && std::abs(compile_rate(r.records) - static_cast<double>(kCompiled) / kSampleRows) < kOracleTol;
  return {ok, "dataset not found; 50-row sample matches its reference statistics: " + std::string(ok ? "yes" : "no")};
}

Verdict breakrc_check() {
  int agree = 0, n = 0;
  for (const auto& c : compositions::generate(20)) {
    ++n;
    auto kb = KnowledgeBase::parse(c.kb_text);
    auto d = parse_qdmr(c.qdmr);
    std::set<std::string> want, got;
    for (const auto& v : evaluate_qdmr(kb, d).values()) want.insert(v.str());
    BreakRcOptions opts;
    opts.project = ProjectMode::AllCandidates;
    try {
      auto run = break_rc(d, KbOracleAnswerer(kb), opts);
      for (const auto& cand : run.final().candidates) got.insert(cand.text);
    } catch (const Error&) {
      continue;
    }
    agree += got == want;
  }
  return {agree == 20 && n == 20, std::to_string(agree) + "/" + std::to_string(n) + " compositions"};
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"operator identification golden rows", operator_rows_check},
      {"graph construction", graph_check},
      {"executor agrees with brute-force interpreter", executor_check},
      {"metric identities and GED symmetry", identities_check},
      {"GED and GED+ match exhaustive enumeration", ged_oracle_check},
      {"rule-based decomposer golden rows", rulebased_check},
      {"dataset statistics", dataset_check},
      {"BreakRC agrees with the executor", breakrc_check},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << "\n";
  }
  return failed ? 1 : 0;
}
