#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qdmr {

struct DepToken {
  int id = 0;  // 1-based within its sentence
  std::string form;
  std::string lemma;  // lower-cased form when the file has "_"
  std::string pos;    // PTB tag
  int head = 0;       // 0 for the root
  std::string deprel;
};

// One sentence; exactly one token has head 0.
struct DepSentence {
  std::vector<DepToken> tokens;

  const DepToken& at(int id) const { return tokens.at(id - 1); }
  int size() const { return static_cast<int>(tokens.size()); }
  int root() const;
  std::vector<int> children(int id) const;
  std::string text() const;
};

// Inclusive token range inside one sentence (sentence is 0-based).
struct Span {
  int sentence = 0;
  int start = 0;
  int end = 0;
};

struct CorefLink {
  Span antecedent;
  Span mention;
};

// A question's parse: one tree per sentence plus cross-sentence coreference.
struct DepTree {
  std::vector<DepSentence> sentences;
  std::vector<CorefLink> coref;

  std::string text() const;
  /// Throws Error{"BadTree"} on multiple roots, cycles or bad spans.
  void validate() const;
};

/// Tab-separated rows "id form lemma pos head deprel" (10-column CoNLL rows
/// are accepted too), blank line between sentences, '#' comments.
DepTree parse_conll(std::string_view content);

/// "s:start-end<TAB>s:start-end" rows; sentence numbers are 1-based.
std::vector<CorefLink> parse_coref(std::string_view content);

DepTree load_dep_tree(const std::string& conll_path, const std::string& coref_path = {});

}  // namespace qdmr
