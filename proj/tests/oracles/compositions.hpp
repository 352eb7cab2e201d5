#pragma once

// SELECT / PROJECT / FILTER / COMPARATIVE chains over generated toy KBs,
// for checking the step-by-step reader against the executor.

#include <random>
#include <string>
#include <vector>

#include "qdmr/executor.hpp"
#include "qdmr/random_program.hpp"

namespace compositions {

struct Composition {
  std::string kb_text;
  std::string qdmr;
};

// Programs whose every step has a nonempty answer, so that the reader
// never has to answer from nothing.
inline std::vector<Composition> generate(int count, std::uint64_t seed = 1) {
  std::vector<Composition> out;
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::uint64_t kb_seed = seed;
  while (static_cast<int>(out.size()) < count) {
    auto kb_text = qdmr::random_program(++kb_seed, {6, 1}).kb_text;
    auto kb = qdmr::KnowledgeBase::parse(kb_text);
    int entities = static_cast<int>(kb.entities().size());
    std::vector<std::string> steps;
    std::vector<int> ent_steps;
    steps.push_back(uni(0, 1) ? "items" : "things");
    ent_steps.push_back(1);
    int extra = uni(1, 3);
    bool compared = false;
    for (int i = 0; i < extra; ++i) {
      int k = ent_steps[uni(0, static_cast<int>(ent_steps.size()) - 1)];
      std::string ref = "#" + std::to_string(k);
      std::string rel = uni(0, 1) ? "friend" : "boss";
      std::string e = "e" + std::to_string(uni(1, entities));
      switch (uni(0, 2)) {
        case 0: steps.push_back(rel + " of " + ref); break;
        case 1: steps.push_back(ref + " " + rel + " " + e); break;
        default:
          steps.push_back("age of " + ref);
          steps.push_back(ref + " where #" + std::to_string(steps.size()) + " is " +
                          (uni(0, 1) ? "more than " : "less than ") + std::to_string(uni(1, 4)));
          compared = true;
      }
      ent_steps.push_back(static_cast<int>(steps.size()));
    }
    // every composition ends on an entity step
    std::string text;
    for (size_t i = 0; i < steps.size(); ++i) text += (i ? " ;return " : "return ") + steps[i];
    auto d = qdmr::parse_qdmr(text);
    bool nonempty = true;
    try {
      for (const auto& r : qdmr::evaluate_steps(kb, d)) nonempty = nonempty && !r.empty();
    } catch (const qdmr::Error&) {
      nonempty = false;
    }
    // keep a mix: at least a third of the programs compare numbers
    if (!nonempty || (!compared && out.size() % 3 == 0)) continue;
    out.push_back({kb_text, text});
  }
  return out;
}

}  // namespace compositions
