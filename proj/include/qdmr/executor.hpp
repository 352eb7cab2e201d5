#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdmr/knowledge_base.hpp"
#include "qdmr/opident.hpp"
#include "qdmr/qdmr.hpp"
#include "qdmr/value.hpp"

namespace qdmr {

// A value an item was derived from, tagged with the step that produced it
// (0 for hand-built sets).
struct Ancestor {
  int step = 0;
  Value value;
  friend bool operator==(const Ancestor&, const Ancestor&) = default;
};

// One result value plus the values it was derived from, nearest first.
// lineage.front() is the origin e of map_K.
struct ProvItem {
  Value value;
  std::vector<Ancestor> lineage;

  const Value* origin() const { return lineage.empty() ? nullptr : &lineage.front().value; }
  friend bool operator==(const ProvItem&, const ProvItem&) = default;
};

// Insertion-ordered set of ProvItems, unique on (value, lineage).
class ProvenancedSet {
 public:
  ProvenancedSet() = default;
  ProvenancedSet(std::initializer_list<Value> values);

  bool insert(ProvItem item);  // false if already present
  void insert(const Value& v) { insert(ProvItem{v, {}}); }

  const std::vector<ProvItem>& items() const { return items_; }
  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  /// Distinct values in first-appearance order.
  std::vector<Value> values() const;
  std::vector<Value> sorted_values() const;
  bool contains(const Value& v) const;

  bool ordered() const { return ordered_; }
  void set_ordered(bool o) { ordered_ = o; }
  /// Producing step, stamped by evaluate_steps; 0 otherwise.
  int step() const { return step_; }
  void set_step(int s) { step_ = s; }

  /// "{A, B}" (sorted) or "[B, A]" when ordered.
  std::string str() const;

 private:
  std::vector<ProvItem> items_;
  bool ordered_ = false;
  int step_ = 0;
};

ProvenancedSet ground_entities(const KnowledgeBase& kb, std::string_view w);
std::string ground_relation(const KnowledgeBase& kb, std::string_view w);

/// Pairs <e, o> where e occurs in o's lineage (matched on step and value
/// when S_e is stamped, on value alone otherwise).
/// Throws Error{"MissingProvenance"} for an item of S_o without lineage.
std::vector<std::pair<ProvItem, ProvItem>> map_k(const ProvenancedSet& s_e, const ProvenancedSet& s_o);

/// One operator over already-evaluated inputs, ordered like inst.refs.
ProvenancedSet evaluate_operator(const KnowledgeBase& kb, const OperatorInstance& inst,
                                 const std::vector<ProvenancedSet>& inputs);

/// Results of every step, in index order. Step failures are rethrown as
/// StepError carrying the original kind and the step index.
std::vector<ProvenancedSet> evaluate_steps(const KnowledgeBase& kb, const Qdmr& d,
                                           Mode mode = Mode::Standard);

ProvenancedSet evaluate_qdmr(const KnowledgeBase& kb, const Qdmr& d, Mode mode = Mode::Standard);

}  // namespace qdmr
