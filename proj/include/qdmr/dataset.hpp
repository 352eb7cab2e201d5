#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdmr/opident.hpp"
#include "qdmr/qdmr.hpp"

namespace qdmr {

struct BreakRecord {
  Question question;
  Qdmr decomposition;
  Mode mode = Mode::Standard;
  std::optional<std::vector<std::string>> declared_operators;
};

struct RejectedRow {
  int row = 0;  // 1-based data row (header excluded)
  std::string id;
  std::string kind;
  std::string message;
};

// A declared operator that disagrees with the classifier. Reported only.
struct OperatorMismatch {
  std::string id;
  int step = 0;
  std::string declared;
  std::string identified;
};

struct LoadResult {
  std::vector<BreakRecord> records;
  std::vector<RejectedRow> rejects;
  std::vector<OperatorMismatch> mismatches;
  int rows = 0;
};

/// RFC 4180 records (quoted fields, doubled quotes, embedded newlines).
std::vector<std::vector<std::string>> parse_csv(std::string_view content);

/// Columns are found by header name (question_id, question_text,
/// decomposition, operators, split). Ids containing "_high" load as
/// HighLevel whatever `mode` says. Throws Error{"RejectQuota"} when more
/// than `max_reject` of the rows fail.
LoadResult parse_break_csv(std::string_view content, Mode mode = Mode::Standard,
                           double max_reject = 0.05);
/// Throws Error{"IoError"}.
LoadResult load_break_csv(const std::string& path, Mode mode = Mode::Standard,
                          double max_reject = 0.05);

SourceDataset source_from_id(std::string_view id);

/// Fraction of records with at least one step of each operator.
/// Throws Error{"EmptyCorpus"}.
std::map<Operator, double> operator_prevalence(const std::vector<BreakRecord>& records);

inline constexpr std::array<std::string_view, 5> kLengthBuckets = {"1-2", "3-4", "5-6", "7-8", "9+"};
int length_bucket(int steps);

/// Throws Error{"EmptyCorpus"}.
std::array<double, 5> length_distribution(const std::vector<BreakRecord>& records);

/// Fraction whose every step compiles to a pseudo-logical-form node.
double compile_rate(const std::vector<BreakRecord>& records);

/// "operator\tprevalence" rows, then "length\tfraction" rows.
std::string stats_tsv(const std::vector<BreakRecord>& records);

}  // namespace qdmr
