#include "qdmr/keywords.hpp"

#include <fstream>
#include <sstream>

#include "qdmr/errors.hpp"
#include "qdmr/text.hpp"

namespace qdmr {

namespace data {
extern const std::string_view kKeywords;
}

std::string_view to_string(KeywordClass c) {
  switch (c) {
    case KeywordClass::Agg: return "agg";
    case KeywordClass::Sup: return "sup";
    case KeywordClass::Com: return "com";
    case KeywordClass::Ari: return "ari";
  }
  return "?";
}

namespace {

KeywordClass class_from(const std::string& s, int line) {
  if (s == "agg") return KeywordClass::Agg;
  if (s == "sup") return KeywordClass::Sup;
  if (s == "com") return KeywordClass::Com;
  if (s == "ari") return KeywordClass::Ari;
  throw Error("BadKeywordTable", "line " + std::to_string(line) + ": unknown class '" + s + "'");
}

}  // namespace

KeywordLexicon KeywordLexicon::parse(std::string_view content) {
  KeywordLexicon lex;
  for (auto c : {KeywordClass::Agg, KeywordClass::Sup, KeywordClass::Com, KeywordClass::Ari})
    lex.tables_[c];
  std::istringstream in{std::string(content)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 3)
      throw Error("BadKeywordTable", "line " + std::to_string(n) + ": expected 3 columns");
    auto phrase = text::join(text::split_whitespace(text::to_lower(cols[1])), " ");
    lex.tables_[class_from(text::trim(cols[0]), n)][phrase] = text::trim(cols[2]);
  }
  return lex;
}

KeywordLexicon KeywordLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const KeywordLexicon& KeywordLexicon::builtin() {
  static const KeywordLexicon lex = parse(data::kKeywords);
  return lex;
}

const std::map<std::string, std::string>& KeywordLexicon::table(KeywordClass c) const {
  return tables_.at(c);
}

std::optional<std::string> KeywordLexicon::find(KeywordClass c, std::string_view phrase) const {
  auto key = text::join(text::split_whitespace(text::to_lower(phrase)), " ");
  const auto& t = table(c);
  auto it = t.find(key);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

const std::string& KeywordLexicon::resolve(KeywordClass c, std::string_view phrase) const {
  auto key = text::join(text::split_whitespace(text::to_lower(phrase)), " ");
  const auto& t = table(c);
  auto it = t.find(key);
  if (it == t.end())
    throw Error("UnknownKeyword",
                "no " + std::string(to_string(c)) + " keyword '" + std::string(phrase) + "'");
  return it->second;
}

std::optional<KeywordLexicon::Match> KeywordLexicon::match_at(
    KeywordClass c, const std::vector<std::string>& tokens, size_t at) const {
  std::optional<Match> best;
  for (const auto& [phrase, symbol] : table(c)) {
    auto words = text::split_whitespace(phrase);
    if (!text::starts_with_word(tokens, at, words)) continue;
    if (!best || words.size() > best->length) best = Match{at, words.size(), phrase, symbol};
  }
  return best;
}

std::optional<KeywordLexicon::Match> KeywordLexicon::find_in(
    KeywordClass c, const std::vector<std::string>& tokens, size_t from) const {
  for (size_t i = from; i < tokens.size(); ++i)
    if (auto m = match_at(c, tokens, i)) return m;
  return std::nullopt;
}

}  // namespace qdmr
