#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qdmr/value.hpp"

namespace qdmr {

struct Triple {
  EntityId subject;
  std::string relation;
  Value object;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Grounding normal form: lower case, leading article dropped (unless it is
/// the only word), every word singularized, joined by single spaces.
std::string normalize_phrase(std::string_view phrase);

// Immutable-after-load triple store with surface names for entities.
class KnowledgeBase {
 public:
  /// "subject<TAB>relation<TAB>object" lines; relation "alias" adds a surface
  /// phrase for the subject instead of a triple. Throws Error{"BadKb"}.
  static KnowledgeBase parse(std::string_view content);
  static KnowledgeBase load(const std::string& path);

  void add(const std::string& subject, const std::string& relation, const Value& object);
  void add_alias(const std::string& entity, const std::string& phrase);

  const std::vector<Triple>& triples() const { return triples_; }
  std::vector<EntityId> entities() const;
  std::vector<std::string> relations() const;

  /// First surface phrase, the id with '_' read as a space by default.
  std::string name(const EntityId& e) const;
  const std::set<std::string>& surface_phrases(const EntityId& e) const;

  /// Entities whose normalized surface phrase equals normalized `w`.
  std::vector<EntityId> ground_entities(std::string_view w) const;
  /// Relation named by the longest normalized sub-phrase of `w` (leftmost on
  /// ties). Throws Error{"NoRelation"}.
  std::string ground_relation(std::string_view w) const;
  bool has_relation(std::string_view r) const { return objects_by_rel_.count(std::string(r)) > 0; }

  std::vector<Value> objects(const EntityId& s, const std::string& r) const;
  std::vector<EntityId> subjects(const std::string& r, const Value& o) const;
  bool holds(const EntityId& s, const std::string& r, const Value& o) const;

  std::string dump() const;  // same format parse() reads

 private:
  void touch(const EntityId& e);

  std::vector<Triple> triples_;
  std::map<std::string, std::set<std::string>> names_;  // id -> surface phrases
  std::map<std::string, std::string> first_name_;
  std::map<std::string, std::vector<Value>> objects_by_rel_;  // r -> all objects (existence)
  std::map<std::pair<std::string, std::string>, std::vector<Value>> spo_;
  std::map<std::string, std::vector<std::string>> alias_order_;
};

}  // namespace qdmr
