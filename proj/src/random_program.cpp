#include "qdmr/random_program.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "qdmr/text.hpp"

namespace qdmr {

namespace {

enum class Kind { Ent, Num, Scalar, Bool };

GenStep make(Operator op, std::vector<int> refs) {
  GenStep s;
  s.op = op;
  s.refs = std::move(refs);
  return s;
}

struct Slot {
  Kind kind;
  std::set<int> anc;  // steps this one derives from through PROJECT/GROUP/FILTER
};

struct Gen {
  std::mt19937_64 rng;
  std::vector<Slot> slots;
  std::vector<GenStep> steps;
  int entities = 0;

  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[uniform(0, static_cast<int>(v.size()) - 1)]; }

  std::vector<int> of_kind(std::initializer_list<Kind> kinds) const {
    std::vector<int> out;
    for (size_t i = 0; i < slots.size(); ++i)
      if (std::find(kinds.begin(), kinds.end(), slots[i].kind) != kinds.end())
        out.push_back(static_cast<int>(i) + 1);
    return out;
  }

  // (key, value) pairs where the value step descends from the key step.
  std::vector<std::pair<int, int>> keyed(Kind value_kind) const {
    std::vector<std::pair<int, int>> out;
    for (size_t j = 0; j < slots.size(); ++j) {
      if (slots[j].kind != value_kind) continue;
      for (int k : slots[j].anc)
        if (k != static_cast<int>(j) + 1 && slots[k - 1].kind == Kind::Ent)
          out.emplace_back(k, static_cast<int>(j) + 1);
    }
    return out;
  }

  std::string entity() { return "e" + std::to_string(uniform(1, entities)); }
  static std::string ref(int k) { return "#" + std::to_string(k); }

  void push(GenStep s, Kind kind, std::set<int> anc = {}) {
    anc.insert(static_cast<int>(slots.size()) + 1);
    slots.push_back({kind, std::move(anc)});
    steps.push_back(std::move(s));
  }

  void select() {
    GenStep s;
    s.op = Operator::Select;
    if (coin()) {
      s.phrase = entity();
      s.text = s.phrase;
    } else {
      s.phrase = coin() ? "items" : "things";
      s.text = s.phrase;
    }
    push(s, Kind::Ent);
  }

  bool step() {
    using Maker = std::function<bool()>;
    auto ents = of_kind({Kind::Ent});
    auto nums = of_kind({Kind::Num});
    auto sets = of_kind({Kind::Ent, Kind::Num});
    auto scalars = of_kind({Kind::Scalar});
    std::vector<Maker> makers = {
        [&] { select(); return true; },
        [&] {  // PROJECT
          if (ents.empty()) return false;
          int k = pick(ents);
          GenStep s = make(Operator::Project, {k});
          s.relation = pick(std::vector<std::string>{"friend", "boss", "age"});
          s.text = s.relation + " of " + ref(k);
          auto anc = slots[k - 1].anc;
          push(s, s.relation == "age" ? Kind::Num : Kind::Ent, anc);
          return true;
        },
        [&] {  // FILTER
          if (ents.empty()) return false;
          int k = pick(ents);
          GenStep s = make(Operator::Filter, {k});
          s.relation = coin() ? "friend" : "boss";
          s.phrase = entity();
          s.text = ref(k) + " " + s.relation + " " + s.phrase;
          push(s, Kind::Ent, slots[k - 1].anc);
          return true;
        },
        [&] {  // AGGREGATE
          if (sets.empty()) return false;
          int k = pick(sets);
          GenStep s = make(Operator::Aggregate, {k});
          if (slots[k - 1].kind == Kind::Num && coin(0.7)) {
            static const std::vector<std::pair<std::string, std::string>> aggs = {
                {"sum", "sum"}, {"maximum", "max"}, {"minimum", "min"}, {"average", "avg"}};
            auto [w, sym] = pick(aggs);
            s.symbol = sym;
            s.text = "the " + w + " of " + ref(k);
          } else {
            s.symbol = "count";
            s.text = "the number of " + ref(k);
          }
          push(s, Kind::Scalar);
          return true;
        },
        [&] {  // GROUP
          auto kv = keyed(Kind::Ent);
          auto kn = keyed(Kind::Num);
          bool numeric = !kn.empty() && (kv.empty() || coin());
          if (!numeric && kv.empty()) return false;
          auto [k, j] = pick(numeric ? kn : kv);
          GenStep s = make(Operator::Group, {j, k});
          std::string w = "number of";
          s.symbol = "count";
          if (numeric && coin()) {
            bool sum = coin();
            w = sum ? "sum of" : "maximum of";
            s.symbol = sum ? "sum" : "max";
          }
          s.text = "the " + w + " " + ref(j) + " for each " + ref(k);
          push(s, Kind::Num, slots[k - 1].anc);
          return true;
        },
        [&] {  // SUPERLATIVE
          auto kn = keyed(Kind::Num);
          if (kn.empty()) return false;
          auto [k, j] = pick(kn);
          GenStep s = make(Operator::Superlative, {k, j});
          bool high = coin();
          s.symbol = high ? "argmax" : "argmin";
          s.text = ref(k) + " where " + ref(j) + " is " + (high ? "highest" : "lowest");
          push(s, Kind::Ent);
          return true;
        },
        [&] {  // COMPARATIVE
          auto kn = keyed(Kind::Num);
          if (kn.empty()) return false;
          auto [k, j] = pick(kn);
          GenStep s = make(Operator::Comparative, {k, j});
          static const std::vector<std::pair<std::string, std::string>> coms = {
              {"more than", ">"}, {"less than", "<"}, {"at least", ">="}, {"at most", "<="}};
          auto [w, sym] = pick(coms);
          s.symbol = sym;
          s.n = uniform(0, 4);
          s.text = ref(k) + " where " + ref(j) + " is " + w + " " + std::to_string(s.n);
          push(s, Kind::Ent);
          return true;
        },
        [&] {  // UNION / DISCARD / INTERSECTION
          if (ents.size() < 2) return false;
          int a = pick(ents), b = pick(ents);
          if (a == b) return false;
          int which = uniform(0, 2);
          GenStep s = make(which == 0 ? Operator::Union : which == 1 ? Operator::Discard : Operator::Intersection,
                    {a, b});
          if (which == 0) s.text = ref(a) + " , " + ref(b);
          if (which == 1) s.text = ref(a) + " besides " + ref(b);
          if (which == 2) {
            s.relation = coin() ? "friend" : "boss";
            s.text = s.relation + " in both " + ref(a) + " and " + ref(b);
          }
          push(s, Kind::Ent);
          return true;
        },
        [&] {  // SORT
          auto kn = keyed(Kind::Num);
          if (kn.empty()) return false;
          auto [k, j] = pick(kn);
          GenStep s = make(Operator::Sort, {k, j});
          s.text = ref(k) + " sorted by " + ref(j);
          push(s, Kind::Ent);
          return true;
        },
        [&] {  // BOOLEAN / ARITHMETIC over scalars
          if (scalars.size() < 2) return false;
          int a = pick(scalars), b = pick(scalars);
          if (a == b) return false;
          if (coin()) {
            GenStep s = make(Operator::Boolean, {a, b});
            s.symbol = "=";
            s.text = "if " + ref(a) + " is the same as " + ref(b);
            push(s, Kind::Bool);
          } else {
            GenStep s = make(Operator::Arithmetic, {a, b});
            bool diff = coin();
            s.symbol = diff ? "-" : "+";
            s.text = std::string("the ") + (diff ? "difference" : "sum") + " of " + ref(a) + " and " + ref(b);
            push(s, Kind::Scalar);
          }
          return true;
        },
    };
    for (int attempt = 0; attempt < 32; ++attempt)
      if (pick(makers)()) return true;
    return false;
  }
};

}  // namespace

RandomProgram random_program(std::uint64_t seed, const RandomOptions& opts) {
  Gen g(seed);
  g.entities = g.uniform(2, std::max(2, opts.max_entities));

  RandomProgram p;
  std::vector<std::string> lines;
  std::set<std::string> seen;
  for (int i = 1; i <= g.entities; ++i) {
    std::string e = "e" + std::to_string(i);
    lines.push_back(e + "\talias\t" + (g.coin() ? "item" : "thing"));
    lines.push_back(e + "\tage\tint:" + std::to_string(g.uniform(1, 5)));
    for (const char* rel : {"friend", "boss"})
      for (int j = 1; j <= g.entities; ++j)
        if (g.coin(0.3)) {
          lines.push_back(e + "\t" + rel + "\te" + std::to_string(j));
          seen.insert(rel);
        }
  }
  // every relation a step may name must exist, or grounding fails
  for (const char* rel : {"friend", "boss"})
    if (!seen.count(rel)) lines.push_back(g.entity() + "\t" + rel + "\t" + g.entity());
  p.kb_text = text::join(lines, "\n") + "\n";

  int n = g.uniform(1, std::max(1, opts.max_steps));
  g.select();
  while (static_cast<int>(g.steps.size()) < n && g.step()) {
  }
  p.steps = g.steps;
  std::vector<std::string> parts;
  for (const auto& s : p.steps) parts.push_back("return " + s.text);
  p.qdmr_text = text::join(parts, " ;");
  return p;
}

}  // namespace qdmr
