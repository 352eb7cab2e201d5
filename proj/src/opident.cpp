#include "qdmr/opident.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "qdmr/text.hpp"

namespace qdmr {

namespace {

constexpr std::string_view kOperatorNames[] = {
    "SELECT", "FILTER", "PROJECT", "AGGREGATE", "GROUP", "SUPERLATIVE", "COMPARATIVE",
    "UNION", "INTERSECTION", "DISCARD", "SORT", "BOOLEAN", "ARITHMETIC"};

// A step flattened to strings; refs keep their "#k" spelling.
struct View {
  std::vector<std::string> toks;
  std::vector<int> ref;  // 0 for words

  size_t size() const { return toks.size(); }
  bool is_ref(size_t i) const { return i < ref.size() && ref[i] > 0; }
  bool word(size_t i, std::string_view w) const { return i < toks.size() && !is_ref(i) && toks[i] == w; }
  int count_refs() const {
    return static_cast<int>(std::count_if(ref.begin(), ref.end(), [](int r) { return r > 0; }));
  }
  size_t find(std::string_view w, size_t from = 0) const {
    for (size_t i = from; i < toks.size(); ++i)
      if (word(i, w)) return i;
    return npos;
  }
  size_t find_phrase(const std::vector<std::string>& phrase) const {
    for (size_t i = 0; i < toks.size(); ++i)
      if (text::starts_with_word(toks, i, phrase)) return i;
    return npos;
  }
  std::string words(size_t begin, size_t end) const {
    std::vector<std::string> out;
    for (size_t i = begin; i < std::min(end, toks.size()); ++i)
      if (!is_ref(i)) out.push_back(toks[i]);
    return text::join(out, " ");
  }
  static constexpr size_t npos = static_cast<size_t>(-1);
};

View view_of(const QdmrStep& step) {
  View v;
  for (const auto& t : step.tokens) {
    v.toks.push_back(t.str());
    v.ref.push_back(t.is_ref() ? t.ref_index() : 0);
  }
  return v;
}

bool is_copula(std::string_view w) {
  return w == "is" || w == "are" || w == "was" || w == "were";
}

bool is_preposition(std::string_view w) {
  static const std::set<std::string, std::less<>> preps = {
      "in", "of", "on", "at", "from", "to", "with", "for", "by", "into", "about"};
  return preps.count(w) > 0;
}

// True when tokens[from..] is a list of refs joined by ",", "and", "or".
bool ref_list(const View& v, size_t from, int min_refs) {
  int refs = 0;
  for (size_t i = from; i < v.size(); ++i) {
    if (v.is_ref(i)) {
      ++refs;
    } else if (v.toks[i] != "," && v.toks[i] != "and" && v.toks[i] != "or") {
      return false;
    }
  }
  return refs >= min_refs;
}

std::string canonical_number(const std::string& tok) {
  long long num = 0, den = 1;
  if (!text::parse_number_token(tok, num, den)) return {};
  if (!tok.empty() && (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '-'))
    return tok;
  return den == 1 ? std::to_string(num) : tok;
}

using Result = std::optional<OperatorInstance>;

OperatorInstance make(Operator op, std::vector<int> refs, std::vector<Constant> cs = {}) {
  return OperatorInstance{op, std::move(refs), std::move(cs)};
}

Result match_boolean(const View& v, const std::vector<int>& refs, const KeywordLexicon& kw) {
  static const std::set<std::string, std::less<>> prefixes = {
      "if", "is", "are", "was", "were", "do", "does", "did"};
  if (v.size() == 0 || v.is_ref(0) || !prefixes.count(v.toks[0]) || refs.empty()) return {};
  size_t from = v.toks[0] == "if" ? 1 : 0;
  std::vector<Constant> cs{{"w", v.words(from, v.size())}};
  if (auto m = kw.find_in(KeywordClass::Com, v.toks, from)) {
    cs.push_back({"w_com", m->phrase});
    cs.push_back({"com", m->symbol});
    size_t after = m->begin + m->length;
    if (refs.size() == 1 && after < v.size() && !v.is_ref(after)) {
      auto n = canonical_number(v.toks[after]);
      if (!n.empty()) cs.push_back({"n", n});
    }
  }
  return make(Operator::Boolean, refs, std::move(cs));
}

Result match_arithmetic(const View& v, const std::vector<int>& refs, const KeywordLexicon& kw) {
  // "sum" is also an aggregate; "the sum of #2 for each #1" is a GROUP
  if (refs.empty() || v.find_phrase({"for", "each"}) != View::npos) return {};
  auto m = kw.find_in(KeywordClass::Ari, v.toks);
  if (!m) return {};
  if (refs.size() >= 2) return make(Operator::Arithmetic, refs, {{"w_ari", m->phrase}, {"ari", m->symbol}});
  // one operand may be a number: "the difference of 100 and #2"
  size_t ref_at = std::find(v.ref.begin(), v.ref.end(), refs[0]) - v.ref.begin();
  for (size_t i = m->begin + m->length; i < v.size(); ++i) {
    long long num = 0, den = 1;
    if (v.is_ref(i) || !text::parse_number_token(v.toks[i], num, den)) continue;
    return make(Operator::Arithmetic, refs,
                {{"w_ari", m->phrase}, {"ari", m->symbol}, {"n", v.toks[i]}, {"n_pos", i < ref_at ? "1" : "2"}});
  }
  return {};
}

Result match_group(const View& v, const std::vector<int>& refs, const KeywordLexicon& kw) {
  if (refs.size() < 2) return {};
  size_t f = v.find_phrase({"for", "each"});
  if (f == View::npos) return {};
  auto m = kw.find_in(KeywordClass::Agg, v.toks);
  if (!m || m->begin >= f) return {};
  std::vector<int> values, keys;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v.is_ref(i)) continue;
    auto& dst = i < f ? values : keys;
    if (std::find(dst.begin(), dst.end(), v.ref[i]) == dst.end()) dst.push_back(v.ref[i]);
  }
  if (values.empty() || keys.empty()) return {};
  std::vector<int> ordered = values;
  for (int k : keys)
    if (std::find(ordered.begin(), ordered.end(), k) == ordered.end()) ordered.push_back(k);
  return make(Operator::Group, ordered, {{"w_agg", m->phrase}, {"agg", m->symbol}});
}

// "#a where #b is [the] highest"
Result match_superlative_where(const View& v, const KeywordLexicon& kw) {
  if (v.size() < 4 || !v.is_ref(0) || !v.word(1, "where") || !v.is_ref(2)) return {};
  size_t i = 3;
  if (i < v.size() && is_copula(v.toks[i])) ++i;
  if (v.word(i, "the")) ++i;
  auto m = kw.match_at(KeywordClass::Sup, v.toks, i);
  if (!m || m->begin + m->length != v.size()) return {};
  return make(Operator::Superlative, {v.ref[0], v.ref[2]},
              {{"w_sup", m->phrase}, {"sup", m->symbol}});
}

// "[which is] the lowest of #1 , #2"
Result match_superlative_among(const View& v, const std::vector<int>& refs,
                               const KeywordLexicon& kw) {
  size_t i = 0;
  if ((v.word(0, "which") || v.word(0, "what")) && v.size() > 1 && is_copula(v.toks[1])) i = 2;
  if (v.word(i, "the")) ++i;
  auto m = kw.match_at(KeywordClass::Sup, v.toks, i);
  if (!m) return {};
  i = m->begin + m->length;
  if (!v.word(i, "of") || !ref_list(v, i + 1, 2)) return {};
  return make(Operator::Superlative, refs,
              {{"w_sup", m->phrase}, {"sup", m->symbol}, {"among", "values"}});
}

// "#a where #b is more than 500"
Result match_comparative(const View& v, const KeywordLexicon& kw) {
  if (v.size() < 5 || !v.is_ref(0) || !v.word(1, "where") || !v.is_ref(2)) return {};
  auto m = kw.find_in(KeywordClass::Com, v.toks, 3);
  if (!m) return {};
  size_t after = m->begin + m->length;
  if (after >= v.size() || v.is_ref(after)) return {};
  auto n = canonical_number(v.toks[after]);
  if (n.empty()) return {};
  return make(Operator::Comparative, {v.ref[0], v.ref[2]},
              {{"w_com", m->phrase}, {"com", m->symbol}, {"n", n}});
}

// "[the] number of #k"
Result match_aggregate(const View& v, const std::vector<int>& refs, const KeywordLexicon& kw) {
  if (refs.size() != 1 || v.size() < 2 || !v.is_ref(v.size() - 1)) return {};
  size_t i = v.word(0, "the") ? 1 : 0;
  auto m = kw.match_at(KeywordClass::Agg, v.toks, i);
  std::string symbol;
  if (m) {
    symbol = m->symbol;
  } else if ((m = kw.match_at(KeywordClass::Sup, v.toks, i))) {
    // "the highest of #2" takes the maximum of a number set
    symbol = m->symbol == "argmax" ? "max" : "min";
  } else {
    return {};
  }
  i = m->begin + m->length;
  if (v.word(i, "of")) ++i;
  if (i != v.size() - 1) return {};
  return make(Operator::Aggregate, refs, {{"w_agg", m->phrase}, {"agg", symbol}});
}

Result match_sort(const View& v, const std::vector<int>& refs) {
  if (refs.size() < 2) return {};
  size_t s = v.find_phrase({"sorted", "by"});
  if (s == View::npos) return {};
  std::vector<Constant> cs;
  auto rest = v.words(s + 2, v.size());
  if (!rest.empty()) cs.push_back({"w", rest});
  return make(Operator::Sort, refs, std::move(cs));
}

Result match_discard(const View& v, const std::vector<int>& refs) {
  if (refs.size() < 2 || v.find("besides") == View::npos) return {};
  return make(Operator::Discard, refs);
}

// "parties in both #2 and #3"
Result match_intersection(const View& v, const std::vector<int>& refs) {
  size_t b = v.find("both");
  if (b == View::npos || b == 0 || refs.size() < 2) return {};
  for (size_t i = 0; i < b; ++i)
    if (v.is_ref(i)) return {};
  if (!ref_list(v, b + 1, 2)) return {};
  size_t end = b;
  while (end > 0 && is_preposition(v.toks[end - 1])) --end;
  auto w = v.words(0, end);
  if (w.empty()) return {};
  return make(Operator::Intersection, refs, {{"w", w}});
}

Result match_union(const View& v, const std::vector<int>& refs) {
  if (!ref_list(v, 0, 2) || refs.size() < 2) return {};
  return make(Operator::Union, refs);
}

}  // namespace

std::string_view to_string(Operator op) { return kOperatorNames[static_cast<int>(op)]; }

Operator operator_from_string(std::string_view name) {
  std::string up;
  for (char c : name) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (int i = 0; i < kOperatorCount; ++i)
    if (kOperatorNames[i] == up) return static_cast<Operator>(i);
  if (up == "COMPARISON") return Operator::Comparative;
  throw Error("UnknownOperator", "unknown operator '" + std::string(name) + "'");
}

const std::vector<Operator>& all_operators() {
  static const std::vector<Operator> ops = [] {
    std::vector<Operator> v;
    for (int i = 0; i < kOperatorCount; ++i) v.push_back(static_cast<Operator>(i));
    return v;
  }();
  return ops;
}

const std::string* OperatorInstance::constant(std::string_view name) const {
  for (const auto& c : constants)
    if (c.name == name) return &c.value;
  return nullptr;
}

const std::string& OperatorInstance::require(std::string_view name) const {
  if (auto* c = constant(name)) return *c;
  throw Error("MissingArgument",
              std::string(to_string(op)) + " has no '" + std::string(name) + "' argument");
}

std::string resolve_keyword(KeywordClass c, std::string_view phrase, const KeywordLexicon& keywords) {
  return keywords.resolve(c, phrase);
}

// Mode only changes which steps occur, not how a given token sequence
// classifies: merged high-level steps land on SELECT, PROJECT or FILTER
// through the same templates.
OperatorInstance identify_operator(const QdmrStep& step, Mode /*mode*/, const KeywordLexicon& kw) {
  View v = view_of(step);
  std::vector<int> refs = step.refs();

  Result r;
  if (!(r = match_boolean(v, refs, kw)) && !(r = match_arithmetic(v, refs, kw)) &&
      !(r = match_group(v, refs, kw)) && !(r = match_superlative_where(v, kw)) &&
      !(r = match_superlative_among(v, refs, kw)) && !(r = match_comparative(v, kw)) &&
      !(r = match_aggregate(v, refs, kw)) && !(r = match_sort(v, refs)) &&
      !(r = match_discard(v, refs)) && !(r = match_intersection(v, refs)) &&
      !(r = match_union(v, refs))) {
    if (refs.empty()) {
      r = make(Operator::Select, {}, {{"w", v.words(0, v.size())}});
    } else if (!v.is_ref(0)) {
      // "[relation] of [ref]": the relation phrase stops before "of"
      size_t end = v.size();
      if (end >= 2 && v.is_ref(end - 1) && v.toks[end - 2] == "of") end -= 2;
      r = make(Operator::Project, refs, {{"w", v.words(0, end)}});
    } else if (v.size() > 1 && !v.words(1, v.size()).empty()) {
      r = make(Operator::Filter, refs, {{"w", v.words(1, v.size())}});
    }
  }
  if (!r)
    throw StepError("NoTemplateMatch",
                    "step " + std::to_string(step.index) + ": no operator template matches '" +
                        step.text() + "'",
                    step.index);
  // no dropped arguments
  assert(std::all_of(refs.begin(), refs.end(),
                     [&](int k) { return std::find(r->refs.begin(), r->refs.end(), k) != r->refs.end(); }));
  return *r;
}

std::vector<StepClassification> classify_qdmr(const Qdmr& d, Mode mode, const KeywordLexicon& kw) {
  std::vector<StepClassification> out;
  for (const auto& s : d.steps()) {
    StepClassification c;
    c.step = s.index;
    try {
      c.instance = identify_operator(s, mode, kw);
    } catch (const Error& e) {
      c.error = e.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string serialize_node(const OperatorInstance& inst) {
  std::vector<std::string> cs, rs;
  for (const auto& c : inst.constants)
    if (c.name.rfind("w_", 0) != 0) cs.push_back(c.value);
  for (int k : inst.refs) rs.push_back("#" + std::to_string(k));
  return std::string(to_string(inst.op)) + "[" + text::join(cs, ",") + "](" + text::join(rs, ",") +
         ")";
}

std::string PseudoLogicalForm::str() const {
  std::string out;
  for (const auto& n : nodes) out += n.serialized + "\n";
  return out;
}

PseudoLogicalForm compile_pseudo_lf(const Qdmr& d, Mode mode, const KeywordLexicon& kw) {
  PseudoLogicalForm lf;
  for (const auto& s : d.steps()) {
    auto inst = identify_operator(s, mode, kw);
    lf.nodes.push_back({s.index, inst, serialize_node(inst)});
  }
  return lf;
}

}  // namespace qdmr
