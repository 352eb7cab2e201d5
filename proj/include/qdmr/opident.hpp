#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdmr/keywords.hpp"
#include "qdmr/qdmr.hpp"

namespace qdmr {

enum class Operator {
  Select, Filter, Project, Aggregate, Group, Superlative, Comparative, Union,
  Intersection, Discard, Sort, Boolean, Arithmetic
};

inline constexpr int kOperatorCount = 13;

std::string_view to_string(Operator op);
Operator operator_from_string(std::string_view name);  // case-insensitive
const std::vector<Operator>& all_operators();

// A named phrase argument extracted from a step ("w", "w_agg", "n", ...).
struct Constant {
  std::string name;
  std::string value;
  friend bool operator==(const Constant&, const Constant&) = default;
};

// A step's operator plus its arguments. Constant names:
//   w       entity / relation / condition phrase
//   w_agg   aggregate phrase,  agg  its symbol
//   w_sup   superlative phrase, sup its symbol
//   w_com   comparison phrase, com  its symbol, n the compared number
//   w_ari   arithmetic phrase, ari  its symbol
//   among   present on SUPERLATIVE steps choosing between referenced values
//           ("which is the lowest of #1 , #2") instead of keys by number
struct OperatorInstance {
  Operator op = Operator::Select;
  std::vector<int> refs;  // dynamic inputs, in template order
  std::vector<Constant> constants;

  const std::string* constant(std::string_view name) const;
  bool has(std::string_view name) const { return constant(name) != nullptr; }
  const std::string& require(std::string_view name) const;

  friend bool operator==(const OperatorInstance&, const OperatorInstance&) = default;
};

/// Matches the step against the operator templates in fixed precedence order.
/// Throws StepError{"NoTemplateMatch"}.
OperatorInstance identify_operator(const QdmrStep& step, Mode mode = Mode::Standard,
                                   const KeywordLexicon& keywords = KeywordLexicon::builtin());

/// Table lookup of a logical-operation phrase; throws Error{"UnknownKeyword"}.
std::string resolve_keyword(KeywordClass c, std::string_view phrase,
                            const KeywordLexicon& keywords = KeywordLexicon::builtin());

struct StepClassification {
  int step = 0;
  std::optional<OperatorInstance> instance;
  std::string error;  // set when instance is empty
};

/// identify_operator over every step; failures are collected, not thrown.
std::vector<StepClassification> classify_qdmr(
    const Qdmr& d, Mode mode = Mode::Standard,
    const KeywordLexicon& keywords = KeywordLexicon::builtin());

struct LogicalNode {
  int step = 0;
  OperatorInstance instance;
  std::string serialized;  // OP[c1,c2](#i,#j)
};

// The deterministic operator/argument rendering of a whole decomposition.
struct PseudoLogicalForm {
  std::vector<LogicalNode> nodes;
  std::string str() const;  // one node per line
};

std::string serialize_node(const OperatorInstance& inst);

/// All-or-nothing: rethrows the first step's NoTemplateMatch.
PseudoLogicalForm compile_pseudo_lf(
    const Qdmr& d, Mode mode = Mode::Standard,
    const KeywordLexicon& keywords = KeywordLexicon::builtin());

}  // namespace qdmr
