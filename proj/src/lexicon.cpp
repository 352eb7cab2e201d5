#include "qdmr/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qdmr/text.hpp"

namespace qdmr {

namespace data {
extern const std::string_view kFunctionWords;
}

FunctionWords FunctionWords::parse(std::string_view content) {
  FunctionWords fw;
  std::string section = "function";
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    std::string t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = t.substr(1, t.size() - 2);
      continue;
    }
    auto words = text::split_whitespace(text::to_lower(t));
    auto it = std::find_if(fw.sections_.begin(), fw.sections_.end(),
                           [&](const auto& s) { return s.first == section; });
    if (it == fw.sections_.end()) {
      fw.sections_.emplace_back(section, std::vector<std::string>{});
      it = std::prev(fw.sections_.end());
    }
    it->second.push_back(text::join(words, " "));
    if (words.size() == 1) fw.single_words_.insert(words.front());
    fw.phrases_.push_back(std::move(words));
  }
  std::stable_sort(fw.phrases_.begin(), fw.phrases_.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return fw;
}

FunctionWords FunctionWords::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot read function-word file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const FunctionWords& FunctionWords::builtin() {
  static const FunctionWords fw = parse(data::kFunctionWords);
  return fw;
}

const std::vector<std::string>& FunctionWords::section(std::string_view name) const {
  static const std::vector<std::string> kEmpty;
  for (const auto& [n, words] : sections_) {
    if (n == name) return words;
  }
  return kEmpty;
}

bool FunctionWords::contains(std::string_view single_word) const {
  return single_words_.count(std::string(single_word)) > 0;
}

size_t FunctionWords::match_at(const std::vector<std::string>& tokens, size_t at) const {
  for (const auto& p : phrases_) {
    if (text::starts_with_word(tokens, at, p)) return p.size();
  }
  return 0;
}

Lexicon::Lexicon(std::set<std::string> question_words, const FunctionWords& functions,
                 int max_refs)
    : question_words_(std::move(question_words)),
      functions_(functions),
      max_refs_(max_refs) {}

std::vector<std::string> Lexicon::ref_tokens() const {
  std::vector<std::string> out;
  for (int k = 1; k <= max_refs_; ++k) out.push_back("#" + std::to_string(k));
  return out;
}

bool Lexicon::allows_word(std::string_view w) const {
  return question_words_.count(std::string(w)) > 0 || functions_.contains(w);
}

Lexicon build_lexicon(const Question& q, int max_refs, const FunctionWords& functions) {
  std::set<std::string> words;
  for (const auto& w : text::word_tokens(q.text)) {
    for (auto& f : text::inflections(w)) words.insert(std::move(f));
    // Possessives: "gandhi's" also contributes "gandhi".
    if (w.size() > 2 && w.substr(w.size() - 2) == "'s") {
      for (auto& f : text::inflections(w.substr(0, w.size() - 2))) words.insert(std::move(f));
    }
  }
  return Lexicon(std::move(words), functions, max_refs);
}

std::vector<Violation> check_lexicon(const QdmrStep& step, const Lexicon& lex) {
  std::vector<std::string> words;
  words.reserve(step.tokens.size());
  for (const auto& t : step.tokens) words.push_back(t.str());

  std::vector<Violation> out;
  size_t i = 0;
  while (i < step.tokens.size()) {
    const Token& t = step.tokens[i];
    if (t.is_ref()) {
      if (!lex.allows_ref(t.ref_index())) {
        out.push_back({t.str(), static_cast<int>(i) + 2});
      }
      ++i;
      continue;
    }
    if (size_t n = lex.function_words().match_at(words, i); n > 1) {
      i += n;
      continue;
    }
    if (!lex.allows_word(t.text())) out.push_back({t.text(), static_cast<int>(i) + 2});
    ++i;
  }
  return out;
}

}  // namespace qdmr
