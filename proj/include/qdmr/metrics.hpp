#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdmr/graph.hpp"
#include "qdmr/qdmr.hpp"

namespace qdmr {

int exact_match(const Qdmr& gold, const Qdmr& pred);

/// Step tokens joined with a ";" token between steps.
std::vector<std::string> decomposition_tokens(const Qdmr& d);

/// SARI of `pred` against the single reference `gold`, both seen as rewrites
/// of the question text. 1-4 grams, 0/0 taken as 0; identical token
/// sequences score 1.
double sari(const std::string& source, const Qdmr& gold, const Qdmr& pred);
double sari_tokens(const std::vector<std::string>& source, const std::vector<std::string>& gold,
                   const std::vector<std::string>& pred);

/// 2|u ∩ v| / (|u| + |v|) over token multisets, every "#k" read as one
/// placeholder token.
double align_ratio(const std::vector<Token>& u, const std::vector<Token>& v);
double align_ratio(const std::vector<std::string>& u, const std::vector<std::string>& v);

struct GedOptions {
  int node_limit = 8;
};

/// Unnormalized minimal edit cost: node insert/delete 1, substitution
/// 1 - align, edge insert/delete 1, and 1 per crossing pair of node
/// correspondences. Throws Error{"TooLarge"} beyond opts.node_limit.
double ged_cost(const DecompositionGraph& a, const DecompositionGraph& b, const GedOptions& opts = {});

/// ged_cost / max(|V|+|E|), capped at 1.
double ged(const DecompositionGraph& a, const DecompositionGraph& b, const GedOptions& opts = {});

inline constexpr int kGedPlusNodeLimit = 5;

/// ged_cost with node merges and splits. A merge of node set V into v costs
/// |V| * (1 - align(v, concatenation of V)); edges are compared after
/// contracting merged groups. Throws Error{"Skipped"} past 5 nodes.
double ged_plus(const DecompositionGraph& a, const DecompositionGraph& b);

struct MetricReport {
  int exact_match = 0;
  double sari = 0;
  std::optional<double> ged;
  std::optional<double> ged_plus;
  std::string ged_skip;  // reason when ged is empty
  std::string ged_plus_skip;
};

MetricReport score(const std::string& question, const Qdmr& gold, const Qdmr& pred,
                   const GedOptions& opts = {});

struct ScoreRow {
  std::string id;
  MetricReport report;
};

/// Per-example TSV (id, em, sari, ged, ged_plus) plus a "mean" row; absent
/// scores print as "skipped" and are left out of the means.
std::string score_table(const std::vector<ScoreRow>& rows);

struct MetricMeans {
  double em = 0, sari = 0, ged = 0, ged_plus = 0;
  int ged_n = 0, ged_plus_n = 0;
};
MetricMeans mean_scores(const std::vector<ScoreRow>& rows);

}  // namespace qdmr
