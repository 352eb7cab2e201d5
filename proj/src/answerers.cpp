#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qdmr/breakrc.hpp"
#include "qdmr/errors.hpp"
#include "qdmr/text.hpp"

namespace qdmr {

namespace {

OperatorInstance instance(Operator op, std::vector<int> refs, std::string w) {
  return {op, std::move(refs), {{"w", std::move(w)}}};
}

ProvenancedSet all_entities(const KnowledgeBase& kb) {
  ProvenancedSet s;
  for (const auto& e : kb.entities()) s.insert(Value(e));
  return s;
}

bool has_relation_word(const KnowledgeBase& kb, const std::string& w) {
  try {
    kb.ground_relation(w);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string answer_text(const Value& v) { return v.is_entity() ? v.as_entity().id : v.str(); }

}  // namespace

AnswerDistribution KbOracleAnswerer::answer(const std::string& question) const {
  auto words = text::split_whitespace(text::to_lower(question));
  if (!words.empty() && words.front() == "return") words.erase(words.begin());
  ProvenancedSet result;
  if (words.size() > 2 && words[0] == "which" && words[1] == "entities") {
    auto rest = text::join({words.begin() + 2, words.end()}, " ");
    result = evaluate_operator(kb_, instance(Operator::Filter, {1}, rest), {all_entities(kb_)});
  } else {
    // "<relation> of <entity>": longest entity suffix whose prefix names a relation
    bool done = false;
    for (size_t i = 1; i < words.size() && !done; ++i) {
      auto suffix = text::join({words.begin() + static_cast<long>(i), words.end()}, " ");
      auto prefix = text::join({words.begin(), words.begin() + static_cast<long>(i)}, " ");
      auto targets = ground_entities(kb_, suffix);
      if (targets.empty() || !has_relation_word(kb_, prefix)) continue;
      result = evaluate_operator(kb_, instance(Operator::Project, {1}, prefix), {targets});
      done = true;
    }
    if (!done) result = evaluate_operator(kb_, instance(Operator::Select, {}, text::join(words, " ")), {});
  }
  AnswerDistribution out;
  auto values = result.values();
  for (const auto& v : values)
    out.candidates.push_back({answer_text(v), 1.0 / static_cast<double>(values.size()), v, {}});
  return out;
}

struct TfIdfCorpusAnswerer::Impl {
  std::vector<Document> docs;
  std::vector<std::map<std::string, double>> vecs;  // normalized tf-idf
  std::map<std::string, double> idf;

  static std::vector<std::string> terms(std::string_view s) {
    auto w = text::word_tokens(text::to_lower(s));
    std::vector<std::string> out = w;
    for (size_t i = 0; i + 1 < w.size(); ++i) out.push_back(w[i] + " " + w[i + 1]);
    return out;
  }

  std::map<std::string, double> vectorize(std::string_view s) const {
    std::map<std::string, double> v;
    for (const auto& t : terms(s)) {
      auto it = idf.find(t);
      if (it != idf.end()) v[t] += it->second;
    }
    double norm = 0;
    for (const auto& [_, x] : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 0)
      for (auto& [_, x] : v) x /= norm;
    return v;
  }
};

TfIdfCorpusAnswerer::TfIdfCorpusAnswerer(std::vector<Document> docs, int top_k) : top_k_(top_k) {
  auto impl = std::make_shared<Impl>();
  impl->docs = std::move(docs);
  std::map<std::string, int> df;
  for (const auto& d : impl->docs) {
    auto ts = Impl::terms(d.text);
    std::set<std::string> uniq(ts.begin(), ts.end());
    for (const auto& t : uniq) ++df[t];
  }
  double n = static_cast<double>(impl->docs.size());
  for (const auto& [t, c] : df) impl->idf[t] = std::log((1 + n) / (1 + c)) + 1;
  for (const auto& d : impl->docs) impl->vecs.push_back(impl->vectorize(d.text));
  impl_ = impl;
}

TfIdfCorpusAnswerer TfIdfCorpusAnswerer::load(const std::string& path, int top_k) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  std::vector<Document> docs;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error("BadCorpus", "expected 'doc_id<TAB>text': " + line);
    docs.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return TfIdfCorpusAnswerer(std::move(docs), top_k);
}

std::vector<std::pair<std::string, double>> TfIdfCorpusAnswerer::retrieve(const std::string& query) const {
  auto q = impl_->vectorize(query);
  std::vector<std::pair<double, size_t>> scored;
  for (size_t i = 0; i < impl_->docs.size(); ++i) {
    double s = 0;
    for (const auto& [t, x] : q) {
      auto it = impl_->vecs[i].find(t);
      if (it != impl_->vecs[i].end()) s += x * it->second;
    }
    if (s > 0) scored.emplace_back(s, i);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::pair<std::string, double>> out;
  for (size_t i = 0; i < scored.size() && static_cast<int>(i) < top_k_; ++i)
    out.emplace_back(impl_->docs[scored[i].second].id, scored[i].first);
  return out;
}

AnswerDistribution TfIdfCorpusAnswerer::answer(const std::string& question) const {
  AnswerDistribution out;
  auto hits = retrieve(question);
  auto qwords = text::word_tokens(text::to_lower(question));
  std::set<std::string> qset(qwords.begin(), qwords.end());
  std::map<std::string, double> mass;
  std::vector<std::string> order;
  for (const auto& [id, score] : hits) {
    out.retrieved.push_back(id);
    const auto& doc = *std::find_if(impl_->docs.begin(), impl_->docs.end(), [&](const Document& d) { return d.id == id; });
    // best-overlapping sentence, minus the words the question already has
    std::string best;
    size_t best_overlap = 0;
    std::string rest = doc.text;
    size_t pos = 0;
    while (pos <= rest.size()) {
      auto end = rest.find(". ", pos);
      auto sentence = rest.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
      auto words = text::word_tokens(sentence);
      size_t overlap = 0;
      std::vector<std::string> extra;
      for (const auto& w : words) {
        if (qset.contains(text::to_lower(w))) ++overlap;
        else extra.push_back(w);
      }
      if (overlap > best_overlap && !extra.empty()) {
        best_overlap = overlap;
        best = text::join(extra, " ");
      }
      if (end == std::string::npos) break;
      pos = end + 2;
    }
    if (best.empty()) continue;
    if (!mass.contains(best)) order.push_back(best);
    mass[best] += score;
  }
  for (const auto& a : order) out.candidates.push_back({a, mass[a], std::nullopt, {}});
  out.normalize();
  return out;
}

}  // namespace qdmr
