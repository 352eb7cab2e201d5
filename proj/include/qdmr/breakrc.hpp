#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdmr/executor.hpp"
#include "qdmr/knowledge_base.hpp"
#include "qdmr/opident.hpp"
#include "qdmr/qdmr.hpp"

namespace qdmr {

struct Candidate {
  std::string text;
  double prob = 0;
  std::optional<Value> value;  // set by answerers that know the typed answer
  // (step, answer text) this candidate was derived from, nearest first
  std::vector<std::pair<int, std::string>> lineage;
};

struct AnswerDistribution {
  std::vector<Candidate> candidates;
  std::vector<std::string> retrieved;  // context ids in retrieval rank order
  bool no_overlap = false;

  const Candidate* top() const;
  void normalize();
};

// A single-hop question answerer (retrieval + reading).
class Answerer {
 public:
  virtual ~Answerer() = default;
  virtual AnswerDistribution answer(const std::string& question) const = 0;
  virtual bool retrieves() const { return true; }
};

// Answers by grounding the question against a KB. "which entities <cond>"
// selects the entities satisfying <cond>; "<relation> of <entity>" follows a
// relation; anything else is grounded as an entity phrase or number.
class KbOracleAnswerer : public Answerer {
 public:
  explicit KbOracleAnswerer(KnowledgeBase kb) : kb_(std::move(kb)) {}
  AnswerDistribution answer(const std::string& question) const override;
  bool retrieves() const override { return false; }
  const KnowledgeBase& kb() const { return kb_; }

 private:
  KnowledgeBase kb_;
};

struct Document {
  std::string id;
  std::string text;
};

// Unigram+bigram TF-IDF retrieval over a small corpus with an extractive
// stub reader: the answer is the part of the best-overlapping sentence that
// the question does not already mention.
class TfIdfCorpusAnswerer : public Answerer {
 public:
  explicit TfIdfCorpusAnswerer(std::vector<Document> docs, int top_k = 10);
  /// "doc_id<TAB>text" per line. Throws Error{"IoError"}.
  static TfIdfCorpusAnswerer load(const std::string& path, int top_k = 10);

  AnswerDistribution answer(const std::string& question) const override;
  /// (doc id, score), best first, at most top_k.
  std::vector<std::pair<std::string, double>> retrieve(const std::string& query) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  int top_k_;
};

enum class ProjectMode {
  TopCandidate,   // substitute the best answer of the referenced step
  AllCandidates,  // answer once per referenced candidate and pool
};

struct BreakRcOptions {
  ProjectMode project = ProjectMode::TopCandidate;
};

struct StepAnswer {
  int step = 0;
  Operator op = Operator::Select;
  std::vector<std::string> queries;  // what was sent to the answerer
  AnswerDistribution answer;
};

struct BreakRcRun {
  std::vector<StepAnswer> steps;
  const AnswerDistribution& final() const { return steps.back().answer; }
};

/// Walks the decomposition step by step. Throws StepError with kind
/// UnsupportedOperator, AnswererFailure, NonNumericAnswer or
/// PreconditionViolation.
BreakRcRun break_rc(const Qdmr& d, const Answerer& answerer, const BreakRcOptions& opts = {});

/// The step with its single reference replaced by "which entities".
/// Throws Error{"PreconditionViolation"}.
std::string extract_question(const QdmrStep& s);

/// Product of probabilities per normalized answer text, renormalized; keeps
/// the candidates (and lineage) of `b`. Sets no_overlap when nothing is shared.
AnswerDistribution intersect_answers(const AnswerDistribution& a, const AnswerDistribution& b);

/// Discrete comparison for COMPARATIVE and SUPERLATIVE steps.
/// Throws Error{"NonNumericAnswer"}.
AnswerDistribution compare_steps(const OperatorInstance& inst, const Qdmr& d,
                                 const std::vector<AnswerDistribution>& ansrs);

/// Integers, decimals, 4-digit years and "23 march 1973" style dates (as a
/// fractional year).
std::optional<double> parse_answer_number(std::string_view text);

/// "when X was released" -> "x": what a comparison step is about.
std::string step_subject(const QdmrStep& s);

struct CombinedRetrieval {
  std::vector<std::string> contexts;
  std::vector<std::string> warnings;
};

/// Contexts retrieved while running break_rc, best rank first (earlier
/// steps win ties), deduplicated, at most `limit`.
CombinedRetrieval combined_retrieve(const Qdmr& d, const Answerer& answerer, int limit = 10,
                                    const BreakRcOptions& opts = {});

/// One JSON object: per-step queries, answers and retrieved ids, and the
/// final distribution.
std::string run_json(const BreakRcRun& run, const std::string& question_id = {});

}  // namespace qdmr
