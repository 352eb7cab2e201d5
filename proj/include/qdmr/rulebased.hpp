#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdmr/dep_tree.hpp"
#include "qdmr/qdmr.hpp"

namespace qdmr {

// The twelve split rules, in the order they are tried.
enum class Rule {
  BeRoot, BeAuxpass, DoSubj, SubjDoHave, Conjunction, HowMany,
  SinglePrep, MultiPrep, Relcl, Superlative, AclVerb, SentCoref
};

std::string_view to_string(Rule r);   // "be-root", "how-many", ...
Rule rule_from_string(std::string_view name);
const std::vector<Rule>& all_rules();

// A piece of a partially decomposed question: a tree token, a reference to
// another step, or a fixed function-word phrase.
struct Piece {
  enum class Kind { Token, Ref, Literal };
  Kind kind = Kind::Token;
  int sentence = 0;  // Token: 0-based sentence; Ref: sentence of the anchor
  int token = 0;     // Token: token id; Ref: subtree head it stands for (0 if none)
  int ref = 0;       // Ref: 1-based step number
  std::string literal;
};

using Fragment = std::vector<Piece>;

struct RuleMatch {
  Rule rule;
  int sentence = 0;
  int token = 0;     // trigger token
  std::string site;  // surface text of the trigger
};

/// First rule that fires on the whole question.
std::optional<RuleMatch> match_rule(const DepTree& tree);

/// Same, on one step of a decomposition in progress.
std::optional<RuleMatch> match_fragment(const DepTree& tree, const Fragment& f);

/// Rendered step text: punctuation and an imperative root verb are dropped.
std::string render(const DepTree& tree, const Fragment& f);

/// Fixpoint of match-and-split. Throws Error{"RecursionLimit"} after
/// `limit` splits.
std::vector<Fragment> decompose_fragments(const DepTree& tree, int limit = 64);

/// Step texts as they appear in the question (original casing).
std::vector<std::string> decompose_steps(const DepTree& tree, int limit = 64);

Qdmr decompose(const DepTree& tree, int limit = 64);

}  // namespace qdmr
