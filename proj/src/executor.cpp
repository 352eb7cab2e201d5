#include "qdmr/executor.hpp"

#include <algorithm>
#include <map>

#include "qdmr/errors.hpp"
#include "qdmr/text.hpp"

namespace qdmr {

ProvenancedSet::ProvenancedSet(std::initializer_list<Value> values) {
  for (const auto& v : values) insert(v);
}

bool ProvenancedSet::insert(ProvItem item) {
  if (std::find(items_.begin(), items_.end(), item) != items_.end()) return false;
  items_.push_back(std::move(item));
  return true;
}

std::vector<Value> ProvenancedSet::values() const {
  std::vector<Value> out;
  for (const auto& it : items_)
    if (std::find(out.begin(), out.end(), it.value) == out.end()) out.push_back(it.value);
  return out;
}

std::vector<Value> ProvenancedSet::sorted_values() const {
  auto v = values();
  std::sort(v.begin(), v.end());
  return v;
}

bool ProvenancedSet::contains(const Value& v) const {
  return std::any_of(items_.begin(), items_.end(), [&](const ProvItem& i) { return i.value == v; });
}

std::string ProvenancedSet::str() const {
  std::vector<std::string> parts;
  for (const auto& v : ordered_ ? values() : sorted_values()) parts.push_back(v.str());
  return (ordered_ ? "[" : "{") + text::join(parts, ", ") + (ordered_ ? "]" : "}");
}

ProvenancedSet ground_entities(const KnowledgeBase& kb, std::string_view w) {
  ProvenancedSet out;
  for (const auto& e : kb.ground_entities(w)) out.insert(Value(e));
  return out;
}

std::string ground_relation(const KnowledgeBase& kb, std::string_view w) { return kb.ground_relation(w); }

std::vector<std::pair<ProvItem, ProvItem>> map_k(const ProvenancedSet& s_e, const ProvenancedSet& s_o) {
  std::vector<std::pair<ProvItem, ProvItem>> out;
  for (const auto& o : s_o.items()) {
    if (o.lineage.empty())
      throw Error("MissingProvenance", "value " + o.value.str() + " has no origin");
    for (const auto& e : s_e.items()) {
      bool hit = std::any_of(o.lineage.begin(), o.lineage.end(), [&](const Ancestor& a) {
        return a.value == e.value && (s_e.step() == 0 || a.step == s_e.step());
      });
      if (hit) out.emplace_back(e, o);
    }
  }
  return out;
}

namespace {

std::vector<Ancestor> with_head(const ProvItem& e, int step) {
  std::vector<Ancestor> l{{step, e.value}};
  l.insert(l.end(), e.lineage.begin(), e.lineage.end());
  return l;
}

// An item kept unchanged by an operator remembers it came from that input.
ProvItem through(const ProvItem& it, int step) { return {it.value, with_head(it, step)}; }

void need_arity(const OperatorInstance& inst, const std::vector<ProvenancedSet>& in, size_t lo,
                size_t hi) {
  if (in.size() < lo || in.size() > hi)
    throw Error("ArityMismatch", std::string(to_string(inst.op)) + " got " +
                                     std::to_string(in.size()) + " inputs");
}

const Value& singleton(const ProvenancedSet& s, const OperatorInstance& inst) {
  auto vals = s.values();
  if (vals.size() != 1)
    throw Error("NonSingleton", std::string(to_string(inst.op)) + " needs a single value, got " +
                                    s.str());
  for (const auto& it : s.items())
    if (it.value == vals.front()) return it.value;
  return s.items().front().value;
}

// Symbol constant, or resolved from the surface phrase when only that is set.
std::string symbol(const OperatorInstance& inst, const char* name, KeywordClass c) {
  if (auto* s = inst.constant(name)) return *s;
  return resolve_keyword(c, inst.require(std::string("w_") + name));
}

Number number_of(const Value& v) { return v.as_number(); }

std::optional<Number> aggregate(const std::string& agg, const std::vector<Value>& vals) {
  if (agg == "count") return Number(static_cast<std::int64_t>(vals.size()));
  Number acc(0);
  if (agg == "sum") {
    for (const auto& v : vals) acc += number_of(v);
    return acc;
  }
  if (vals.empty()) return std::nullopt;
  if (agg == "avg") {
    for (const auto& v : vals) acc += number_of(v);
    return acc / Number(static_cast<std::int64_t>(vals.size()));
  }
  if (agg == "max" || agg == "min") {
    Number best = number_of(vals.front());
    for (const auto& v : vals) {
      Number n = number_of(v);
      if (agg == "max" ? n > best : n < best) best = n;
    }
    return best;
  }
  throw Error("UnknownKeyword", "unknown aggregate '" + agg + "'");
}

bool compare(const Value& a, const std::string& com, const Value& b) {
  if (com == "=") return a == b;
  if (com == "!=") return !(a == b);
  const Number& x = a.as_number();
  const Number& y = b.as_number();
  if (com == "<") return x < y;
  if (com == "<=") return x <= y;
  if (com == ">") return x > y;
  if (com == ">=") return x >= y;
  throw Error("UnknownKeyword", "unknown comparison '" + com + "'");
}

Value parse_n(const std::string& n) {
  if (auto v = parse_number(n)) return Value(*v);
  long long num = 0, den = 1;
  if (text::parse_number_token(n, num, den)) return Value(Number(num, den));
  throw Error("TypeError", "not a number: '" + n + "'");
}

ProvenancedSet op_select(const KnowledgeBase& kb, const OperatorInstance& inst) {
  const auto& w = inst.require("w");
  auto out = ground_entities(kb, w);
  if (out.empty()) {
    long long num = 0, den = 1;
    if (auto n = parse_number(w)) out.insert(Value(*n));
    else if (text::parse_number_token(w, num, den)) out.insert(Value(Number(num, den)));
  }
  return out;
}

ProvenancedSet op_project(const KnowledgeBase& kb, const OperatorInstance& inst,
                          const std::vector<ProvenancedSet>& in) {
  need_arity(inst, in, 1, 1);
  auto r = kb.ground_relation(inst.require("w"));
  ProvenancedSet out;
  for (const auto& e : in[0].items()) {
    if (!e.value.is_entity()) continue;
    for (const auto& o : kb.objects(e.value.as_entity(), r)) out.insert({o, with_head(e, in[0].step())});
  }
  return out;
}

bool linked(const KnowledgeBase& kb, const Value& o, const std::string& r, const Value& e) {
  if (o.is_entity() && kb.holds(o.as_entity(), r, e)) return true;
  return e.is_entity() && kb.holds(e.as_entity(), r, o);
}

bool linked_any(const KnowledgeBase& kb, const Value& o, const Value& e) {
  for (const auto& t : kb.triples())
    if ((Value(t.subject) == o && t.object == e) || (Value(t.subject) == e && t.object == o))
      return true;
  return false;
}

// w = relation phrase + entity phrase; the entity phrase is the longest
// suffix of w that grounds (to entities, or a number literal).
ProvenancedSet op_filter(const KnowledgeBase& kb, const OperatorInstance& inst,
                         const std::vector<ProvenancedSet>& in) {
  need_arity(inst, in, 1, 2);
  const auto& w = inst.require("w");
  std::vector<Value> targets;
  std::string rel_phrase = w;
  if (in.size() == 2) {
    targets = in[1].values();
  } else {
    auto words = text::split_whitespace(w);
    for (size_t i = 0; i < words.size(); ++i) {
      std::vector<std::string> suffix(words.begin() + i, words.end());
      auto phrase = text::join(suffix, " ");
      for (const auto& e : kb.ground_entities(phrase)) targets.push_back(Value(e));
      if (targets.empty() && suffix.size() == 1)
        if (auto n = parse_number(phrase)) targets.push_back(Value(*n));
      if (!targets.empty()) {
        rel_phrase = text::join(std::vector<std::string>(words.begin(), words.begin() + i), " ");
        break;
      }
    }
  }

  ProvenancedSet out;
  if (targets.empty() && in.size() == 1) {
    // unary condition: "#1 that are red" keeps o with red(o, true)
    auto r = kb.ground_relation(w);
    for (const auto& o : in[0].items())
      if (linked(kb, o.value, r, Value(true))) out.insert(through(o, in[0].step()));
    return out;
  }
  std::optional<std::string> r;
  if (!text::trim(rel_phrase).empty()) r = kb.ground_relation(rel_phrase);
  for (const auto& o : in[0].items()) {
    bool keep = std::any_of(targets.begin(), targets.end(), [&](const Value& e) {
      return r ? linked(kb, o.value, *r, e) : linked_any(kb, o.value, e);
    });
    if (keep) out.insert(through(o, in[0].step()));
  }
  return out;
}

ProvenancedSet op_aggregate(const OperatorInstance& inst, const std::vector<ProvenancedSet>& in) {
  need_arity(inst, in, 1, 1);
  auto agg = symbol(inst, "agg", KeywordClass::Agg);
  ProvenancedSet out;
  if (auto n = aggregate(agg, in[0].values())) out.insert(Value(*n));
  return out;
}

// refs = [values, keys]
ProvenancedSet op_group(const OperatorInstance& inst, const std::vector<ProvenancedSet>& in) {
  need_arity(inst, in, 2, 2);
  auto agg = symbol(inst, "agg", KeywordClass::Agg);
  auto pairs = map_k(in[1], in[0]);
  ProvenancedSet out;
  for (const auto& e : in[1].items()) {
    std::vector<Value> vals;
    for (const auto& [k, o] : pairs)
      if (k == e && std::find(vals.begin(), vals.end(), o.value) == vals.end()) vals.push_back(o.value);
    if (auto n = aggregate(agg, vals)) out.insert({Value(*n), with_head(e, in[1].step())});
  }
  return out;
}

// Numbers paired with each key item of s_e, in key order.
std::vector<std::pair<ProvItem, std::vector<Number>>> keyed_numbers(const ProvenancedSet& s_e,
                                                                   const ProvenancedSet& s_n) {
  auto pairs = map_k(s_e, s_n);
  std::vector<std::pair<ProvItem, std::vector<Number>>> out;
  for (const auto& e : s_e.items()) {
    std::vector<Number> nums;
    for (const auto& [k, o] : pairs)
      if (k == e) nums.push_back(o.value.as_number());
    out.emplace_back(e, std::move(nums));
  }
  return out;
}

ProvenancedSet op_superlative(const OperatorInstance& inst, const std::vector<ProvenancedSet>& in) {
  auto sup = symbol(inst, "sup", KeywordClass::Sup);
  bool highest = sup == "argmax";
  if (sup != "argmax" && sup != "argmin") throw Error("UnknownKeyword", "unknown superlative '" + sup + "'");
  ProvenancedSet out;
  if (inst.has("among")) {
    need_arity(inst, in, 2, 64);
    std::optional<Number> best;
    for (const auto& s : in)
      for (const auto& it : s.items()) {
        Number n = it.value.as_number();
        if (!best || (highest ? n > *best : n < *best)) best = n;
      }
    // the answer is what the winning number describes, when known
    for (const auto& s : in)
      for (const auto& it : s.items()) {
        if (it.value.as_number() != *best) continue;
        if (it.lineage.empty())
          out.insert(through(it, s.step()));
        else
          out.insert(ProvItem{it.lineage.front().value, {it.lineage.begin() + 1, it.lineage.end()}});
      }
    return out;
  }
  need_arity(inst, in, 2, 2);
  auto keyed = keyed_numbers(in[0], in[1]);
  std::optional<Number> best;
  for (const auto& [e, nums] : keyed)
    for (const auto& n : nums)
      if (!best || (highest ? n > *best : n < *best)) best = n;
  if (!best) return out;
  for (const auto& [e, nums] : keyed)
    if (std::find(nums.begin(), nums.end(), *best) != nums.end()) out.insert(through(e, in[0].step()));
  return out;
}

ProvenancedSet op_comparative(const OperatorInstance& inst, const std::vector<ProvenancedSet>& in) {
  need_arity(inst, in, 2, 2);
  auto com = symbol(inst, "com", KeywordClass::Com);
  Value n = parse_n(inst.require("n"));
  ProvenancedSet out;
  for (const auto& [e, nums] : keyed_numbers(in[0], in[1]))
    if (std::any_of(nums.begin(), nums.end(), [&](const Number& x) { return compare(Value(x), com, n); }))
      out.insert(through(e, in[0].step()));
  return out;
}

ProvenancedSet op_union(const OperatorInstance& inst, const std::vector<ProvenancedSet>& in) {
  need_arity(inst, in, 2, 64);
  ProvenancedSet out;
  for (const auto& s : in)
    for (const auto& it : s.items()) out.insert(through(it, s.step()));
  return out;
}

ProvenancedSet op_discard(const OperatorInstance& inst, const std::vector<ProvenancedSet>& in) {
  need_arity(inst, in, 2, 2);
  ProvenancedSet out;
  for (const auto& it : in[0].items())
    if (!in[1].contains(it.value)) out.insert(through(it, in[0].step()));
  return out;
}

// Objects related by w to some entity of every input set.
ProvenancedSet op_intersection(const KnowledgeBase& kb, const OperatorInstance& inst,
                               const std::vector<ProvenancedSet>& in) {
  need_arity(inst, in, 2, 64);
  auto r = kb.ground_relation(inst.require("w"));
  std::vector<std::map<Value, ProvItem>> reach(in.size());
  for (size_t i = 0; i < in.size(); ++i)
    for (const auto& e : in[i].items()) {
      if (!e.value.is_entity()) continue;
      for (const auto& o : kb.objects(e.value.as_entity(), r))
        if (!reach[i].count(o)) reach[i].emplace(o, ProvItem{o, with_head(e, in[i].step())});
    }
  ProvenancedSet out;
  // first input's order
  for (const auto& e : in[0].items()) {
    if (!e.value.is_entity()) continue;
    for (const auto& o : kb.objects(e.value.as_entity(), r)) {
      bool all = std::all_of(reach.begin() + 1, reach.end(), [&](const auto& m) { return m.count(o) > 0; });
      if (all) out.insert(reach[0].at(o));
    }
  }
  return out;
}

std::string sort_name(const KnowledgeBase& kb, const Value& v) {
  return v.is_entity() ? kb.name(v.as_entity()) : v.str();
}

ProvenancedSet op_sort(const KnowledgeBase& kb, const OperatorInstance& inst,
                       const std::vector<ProvenancedSet>& in) {
  need_arity(inst, in, 2, 2);
  auto keyed = keyed_numbers(in[0], in[1]);
  std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    bool pa = !a.second.empty(), pb = !b.second.empty();
    if (pa != pb) return pa;
    if (pa) {
      Number ka = *std::min_element(a.second.begin(), a.second.end());
      Number kb_ = *std::min_element(b.second.begin(), b.second.end());
      if (ka != kb_) return ka < kb_;
    }
    return sort_name(kb, a.first.value) < sort_name(kb, b.first.value);
  });
  ProvenancedSet out;
  out.set_ordered(true);
  for (const auto& [e, _] : keyed) out.insert(through(e, in[0].step()));
  return out;
}

ProvenancedSet op_boolean(const KnowledgeBase& kb, const OperatorInstance& inst,
                          const std::vector<ProvenancedSet>& in) {
  ProvenancedSet out;
  if (in.size() == 1 && inst.has("n")) {
    out.insert(Value(compare(singleton(in[0], inst), symbol(inst, "com", KeywordClass::Com),
                             parse_n(inst.require("n")))));
    return out;
  }
  need_arity(inst, in, 2, 2);
  const Value& a = singleton(in[0], inst);
  const Value& b = singleton(in[1], inst);
  if (inst.has("com")) {
    out.insert(Value(compare(a, inst.require("com"), b)));
    return out;
  }
  auto r = kb.ground_relation(inst.require("w"));
  out.insert(Value(linked(kb, a, r, b)));
  return out;
}

ProvenancedSet op_arithmetic(const OperatorInstance& inst, const std::vector<ProvenancedSet>& in) {
  std::vector<Number> xs;
  for (const auto& s : in) xs.push_back(singleton(s, inst).as_number());
  if (in.size() == 1 && inst.has("n")) {
    Number n = parse_n(inst.require("n")).as_number();
    xs.insert(inst.require("n_pos") == "1" ? xs.begin() : xs.end(), n);
  }
  if (xs.size() < 2)
    throw Error("ArityMismatch", "ARITHMETIC got " + std::to_string(xs.size()) + " operands");
  auto ari = symbol(inst, "ari", KeywordClass::Ari);
  Number acc = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) {
    Number x = xs[i];
    if (ari == "+") acc += x;
    else if (ari == "-") acc -= x;
    else if (ari == "*") acc *= x;
    else if (ari == "/") {
      if (x == 0) throw Error("TypeError", "division by zero");
      acc /= x;
    } else {
      throw Error("UnknownKeyword", "unknown arithmetic '" + ari + "'");
    }
  }
  ProvenancedSet out;
  out.insert(Value(acc));
  return out;
}

}  // namespace

ProvenancedSet evaluate_operator(const KnowledgeBase& kb, const OperatorInstance& inst,
                                 const std::vector<ProvenancedSet>& inputs) {
  switch (inst.op) {
    case Operator::Select: need_arity(inst, inputs, 0, 0); return op_select(kb, inst);
    case Operator::Project: return op_project(kb, inst, inputs);
    case Operator::Filter: return op_filter(kb, inst, inputs);
    case Operator::Aggregate: return op_aggregate(inst, inputs);
    case Operator::Group: return op_group(inst, inputs);
    case Operator::Superlative: return op_superlative(inst, inputs);
    case Operator::Comparative: return op_comparative(inst, inputs);
    case Operator::Union: return op_union(inst, inputs);
    case Operator::Intersection: return op_intersection(kb, inst, inputs);
    case Operator::Discard: return op_discard(inst, inputs);
    case Operator::Sort: return op_sort(kb, inst, inputs);
    case Operator::Boolean: return op_boolean(kb, inst, inputs);
    case Operator::Arithmetic: return op_arithmetic(inst, inputs);
  }
  throw Error("ArityMismatch", "unknown operator");
}

std::vector<ProvenancedSet> evaluate_steps(const KnowledgeBase& kb, const Qdmr& d, Mode mode) {
  std::vector<ProvenancedSet> results;
  for (const auto& s : d.steps()) {
    try {
      auto inst = identify_operator(s, mode);
      std::vector<ProvenancedSet> inputs;
      for (int k : inst.refs) inputs.push_back(results.at(k - 1));
      results.push_back(evaluate_operator(kb, inst, inputs));
      results.back().set_step(s.index);
    } catch (const StepError&) {
      throw;
    } catch (const Error& e) {
      throw StepError(e.kind(), "step " + std::to_string(s.index) + ": " + e.what(), s.index);
    }
  }
  return results;
}

ProvenancedSet evaluate_qdmr(const KnowledgeBase& kb, const Qdmr& d, Mode mode) {
  auto all = evaluate_steps(kb, d, mode);
  if (all.empty()) return {};
  return all.back();
}

}  // namespace qdmr
