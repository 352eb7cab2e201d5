#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qdmr/qdmr.hpp"

namespace qdmr {

// The fixed part of the annotation vocabulary, loaded from the function-word
// file. Multi-word entries ("for each") are matched as units.
class FunctionWords {
 public:
  /// Parses the function-word file format; entries of every section are kept.
  static FunctionWords parse(std::string_view content);
  static FunctionWords load(const std::string& path);
  /// The list shipped in data/function_words.txt, compiled in.
  static const FunctionWords& builtin();

  const std::vector<std::vector<std::string>>& phrases() const noexcept {
    return phrases_;
  }
  const std::vector<std::string>& section(std::string_view name) const;
  bool contains(std::string_view single_word) const;
  /// Length in tokens of the longest entry matching at `tokens[at]`, or 0.
  size_t match_at(const std::vector<std::string>& tokens, size_t at) const;
  size_t size() const noexcept { return phrases_.size(); }

 private:
  std::vector<std::vector<std::string>> phrases_;  // longest first
  std::vector<std::pair<std::string, std::vector<std::string>>> sections_;
  std::set<std::string> single_words_;
};

class Lexicon {
 public:
  Lexicon(std::set<std::string> question_words, const FunctionWords& functions,
          int max_refs);

  const std::set<std::string>& question_words() const noexcept {
    return question_words_;
  }
  const FunctionWords& function_words() const noexcept { return functions_; }
  int max_refs() const noexcept { return max_refs_; }
  std::vector<std::string> ref_tokens() const;

  bool allows_word(std::string_view w) const;
  bool allows_ref(int k) const { return k >= 1 && k <= max_refs_; }

 private:
  std::set<std::string> question_words_;
  FunctionWords functions_;
  int max_refs_;
};

/// Lower-cased question words plus their inflections, the function words and
/// reference tokens #1..#max_refs.
Lexicon build_lexicon(const Question& q, int max_refs,
                      const FunctionWords& functions = FunctionWords::builtin());

struct Violation {
  std::string token;
  int position = 0;  // 1-based, counting the leading "return" as position 1
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every token of `step` the lexicon does not allow; empty iff valid.
std::vector<Violation> check_lexicon(const QdmrStep& step, const Lexicon& lex);

}  // namespace qdmr
