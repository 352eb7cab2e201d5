#include "qdmr/dep_tree.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qdmr/errors.hpp"
#include "qdmr/text.hpp"

namespace qdmr {

int DepSentence::root() const {
  for (const auto& t : tokens)
    if (t.head == 0) return t.id;
  return 0;
}

std::vector<int> DepSentence::children(int id) const {
  std::vector<int> out;
  for (const auto& t : tokens)
    if (t.head == id) out.push_back(t.id);
  return out;
}

std::string DepSentence::text() const {
  std::vector<std::string> parts;
  for (const auto& t : tokens) parts.push_back(t.form);
  return text::join(parts, " ");
}

std::string DepTree::text() const {
  std::vector<std::string> parts;
  for (const auto& s : sentences) parts.push_back(s.text());
  return text::join(parts, " ");
}

void DepTree::validate() const {
  if (sentences.empty()) throw Error("BadTree", "no sentences");
  for (size_t si = 0; si < sentences.size(); ++si) {
    const auto& s = sentences[si];
    auto where = "sentence " + std::to_string(si + 1) + ": ";
    int roots = 0;
    for (const auto& t : s.tokens) {
      if (t.head < 0 || t.head > s.size())
        throw Error("BadTree", where + "token " + std::to_string(t.id) + " has head out of range");
      roots += t.head == 0;
    }
    if (roots != 1) throw Error("BadTree", where + std::to_string(roots) + " roots");
    for (const auto& t : s.tokens) {
      std::set<int> seen;
      for (int h = t.id; h != 0; h = s.at(h).head)
        if (!seen.insert(h).second) throw Error("BadTree", where + "cycle through token " + std::to_string(t.id));
    }
  }
  auto check = [&](const Span& sp) {
    if (sp.sentence < 0 || sp.sentence >= static_cast<int>(sentences.size()) || sp.start < 1 ||
        sp.end < sp.start || sp.end > sentences[sp.sentence].size())
      throw Error("BadTree", "coreference span out of bounds");
  };
  for (const auto& c : coref) {
    check(c.antecedent);
    check(c.mention);
  }
}

DepTree parse_conll(std::string_view content) {
  DepTree tree;
  DepSentence cur;
  std::istringstream in{std::string(content)};
  std::string line;
  int n = 0;
  auto flush = [&] {
    if (!cur.tokens.empty()) tree.sentences.push_back(std::move(cur));
    cur = {};
  };
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    auto cols = text::split(line, '\t');
    DepToken t;
    try {
      if (cols.size() == 6) {
        t = {std::stoi(cols[0]), cols[1], cols[2], cols[3], std::stoi(cols[4]), cols[5]};
      } else if (cols.size() >= 8) {
        std::string pos = cols[4] != "_" ? cols[4] : cols[3];
        t = {std::stoi(cols[0]), cols[1], cols[2], pos, std::stoi(cols[6]), cols[7]};
      } else {
        throw Error("BadTree", "expected 6 or 10 columns");
      }
    } catch (const std::logic_error&) {
      throw Error("BadTree", "line " + std::to_string(n) + ": bad number");
    } catch (const Error& e) {
      throw Error("BadTree", "line " + std::to_string(n) + ": " + e.what());
    }
    if (t.id != cur.size() + 1)
      throw Error("BadTree", "line " + std::to_string(n) + ": token ids must count up from 1");
    if (t.lemma.empty() || t.lemma == "_") t.lemma = text::to_lower(t.form);
    cur.tokens.push_back(std::move(t));
  }
  flush();
  tree.validate();
  return tree;
}

namespace {
Span parse_span(const std::string& s) {
  auto colon = s.find(':');
  auto dash = s.find('-', colon == std::string::npos ? 0 : colon);
  if (colon == std::string::npos || dash == std::string::npos)
    throw Error("BadTree", "bad coreference span '" + s + "'");
  try {
    return {std::stoi(s.substr(0, colon)) - 1, std::stoi(s.substr(colon + 1, dash - colon - 1)),
            std::stoi(s.substr(dash + 1))};
  } catch (const std::logic_error&) {
    throw Error("BadTree", "bad coreference span '" + s + "'");
  }
}
}  // namespace

std::vector<CorefLink> parse_coref(std::string_view content) {
  std::vector<CorefLink> out;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    auto t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto cols = text::split_whitespace(t);
    if (cols.size() != 2) throw Error("BadTree", "coreference row needs two spans: '" + t + "'");
    out.push_back({parse_span(cols[0]), parse_span(cols[1])});
  }
  return out;
}

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

DepTree load_dep_tree(const std::string& conll_path, const std::string& coref_path) {
  auto tree = parse_conll(slurp(conll_path));
  if (!coref_path.empty()) {
    tree.coref = parse_coref(slurp(coref_path));
    tree.validate();
  }
  return tree;
}

}  // namespace qdmr
