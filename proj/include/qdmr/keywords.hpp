#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qdmr {

enum class KeywordClass { Agg, Sup, Com, Ari };

std::string_view to_string(KeywordClass c);

// Phrase -> symbol tables grounding logical-operation phrases:
//   agg: count sum avg max min     sup: argmax argmin
//   com: < <= > >= = !=            ari: + - * /
class KeywordLexicon {
 public:
  /// Parses "class<TAB>phrase<TAB>symbol" rows ('#' comments allowed).
  static KeywordLexicon parse(std::string_view content);
  static KeywordLexicon load(const std::string& path);
  static const KeywordLexicon& builtin();

  /// Throws Error{"UnknownKeyword"} when the phrase is not listed.
  const std::string& resolve(KeywordClass c, std::string_view phrase) const;
  std::optional<std::string> find(KeywordClass c, std::string_view phrase) const;

  struct Match {
    size_t begin = 0;
    size_t length = 0;
    std::string phrase;
    std::string symbol;
  };
  /// Longest phrase of class `c` starting exactly at `tokens[at]`.
  std::optional<Match> match_at(KeywordClass c, const std::vector<std::string>& tokens,
                                size_t at) const;
  /// Leftmost-longest occurrence of a class-`c` phrase in `tokens[from..]`.
  std::optional<Match> find_in(KeywordClass c, const std::vector<std::string>& tokens,
                               size_t from = 0) const;

  const std::map<std::string, std::string>& table(KeywordClass c) const;

 private:
  std::map<KeywordClass, std::map<std::string, std::string>> tables_;
};

}  // namespace qdmr
