#include "qdmr/knowledge_base.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qdmr/errors.hpp"
#include "qdmr/text.hpp"

namespace qdmr {

namespace {

std::string default_name(const std::string& id) {
  std::string out = id;
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

bool is_article(const std::string& w) { return w == "the" || w == "a" || w == "an"; }

std::vector<std::string> normal_words(std::string_view phrase) {
  std::string s(phrase);
  std::replace(s.begin(), s.end(), '_', ' ');
  auto words = text::word_tokens(s);
  if (words.size() > 1 && is_article(words.front())) words.erase(words.begin());
  for (auto& w : words) w = text::singularize(w);
  return words;
}

}  // namespace

std::string normalize_phrase(std::string_view phrase) { return text::join(normal_words(phrase), " "); }

KnowledgeBase KnowledgeBase::parse(std::string_view content) {
  KnowledgeBase kb;
  std::istringstream in{std::string(content)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 3)
      throw Error("BadKb", "line " + std::to_string(n) + ": expected subject<TAB>relation<TAB>object");
    auto s = text::trim(cols[0]), r = text::to_lower(text::trim(cols[1])), o = text::trim(cols[2]);
    if (s.empty() || r.empty() || o.empty())
      throw Error("BadKb", "line " + std::to_string(n) + ": empty field");
    if (r == "alias") {
      kb.add_alias(s, o);
      continue;
    }
    try {
      kb.add(s, r, parse_value(o));
    } catch (const Error& e) {
      throw Error("BadKb", "line " + std::to_string(n) + ": " + e.what());
    }
  }
  return kb;
}

KnowledgeBase KnowledgeBase::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void KnowledgeBase::touch(const EntityId& e) {
  if (names_.count(e.id)) return;
  auto nm = default_name(e.id);
  names_[e.id].insert(nm);
  first_name_[e.id] = nm;
}

void KnowledgeBase::add(const std::string& subject, const std::string& relation, const Value& object) {
  EntityId s{subject};
  auto r = text::to_lower(relation);
  if (holds(s, r, object)) return;
  touch(s);
  if (object.is_entity()) touch(object.as_entity());
  triples_.push_back({s, r, object});
  objects_by_rel_[r].push_back(object);
  spo_[{s.id, r}].push_back(object);
}

void KnowledgeBase::add_alias(const std::string& entity, const std::string& phrase) {
  touch(EntityId{entity});
  // the first alias becomes the display name; the id-derived name still grounds
  if (alias_order_[entity].empty()) first_name_[entity] = phrase;
  names_[entity].insert(phrase);
  alias_order_[entity].push_back(phrase);
}

std::vector<EntityId> KnowledgeBase::entities() const {
  std::vector<EntityId> out;
  for (const auto& [id, _] : names_) out.push_back({id});
  return out;
}

std::vector<std::string> KnowledgeBase::relations() const {
  std::vector<std::string> out;
  for (const auto& [r, _] : objects_by_rel_) out.push_back(r);
  return out;
}

std::string KnowledgeBase::name(const EntityId& e) const {
  auto it = first_name_.find(e.id);
  return it == first_name_.end() ? default_name(e.id) : it->second;
}

const std::set<std::string>& KnowledgeBase::surface_phrases(const EntityId& e) const {
  static const std::set<std::string> none;
  auto it = names_.find(e.id);
  return it == names_.end() ? none : it->second;
}

std::vector<EntityId> KnowledgeBase::ground_entities(std::string_view w) const {
  auto target = normalize_phrase(w);
  std::vector<EntityId> out;
  if (target.empty()) return out;
  for (const auto& [id, phrases] : names_) {
    for (const auto& p : phrases) {
      if (normalize_phrase(p) == target) {
        out.push_back({id});
        break;
      }
    }
  }
  return out;
}

std::string KnowledgeBase::ground_relation(std::string_view w) const {
  auto words = normal_words(w);
  std::string best;
  size_t best_len = 0, best_pos = 0;
  for (const auto& [r, _] : objects_by_rel_) {
    auto rw = normal_words(r);
    if (rw.empty()) continue;
    for (size_t i = 0; i + rw.size() <= words.size(); ++i) {
      if (!text::starts_with_word(words, i, rw)) continue;
      if (rw.size() > best_len || (rw.size() == best_len && i < best_pos)) {
        best = r;
        best_len = rw.size();
        best_pos = i;
      }
      break;
    }
  }
  if (best.empty()) throw Error("NoRelation", "no relation in '" + std::string(w) + "'");
  return best;
}

std::vector<Value> KnowledgeBase::objects(const EntityId& s, const std::string& r) const {
  auto it = spo_.find({s.id, r});
  return it == spo_.end() ? std::vector<Value>{} : it->second;
}

std::vector<EntityId> KnowledgeBase::subjects(const std::string& r, const Value& o) const {
  std::vector<EntityId> out;
  for (const auto& t : triples_)
    if (t.relation == r && t.object == o) out.push_back(t.subject);
  return out;
}

bool KnowledgeBase::holds(const EntityId& s, const std::string& r, const Value& o) const {
  auto it = spo_.find({s.id, r});
  return it != spo_.end() && std::find(it->second.begin(), it->second.end(), o) != it->second.end();
}

std::string KnowledgeBase::dump() const {
  std::ostringstream out;
  for (const auto& [id, phrases] : alias_order_)
    for (const auto& p : phrases) out << id << "\talias\t" << p << "\n";
  for (const auto& t : triples_) out << t.subject.id << "\t" << t.relation << "\t" << t.object.typed() << "\n";
  return out.str();
}

}  // namespace qdmr
