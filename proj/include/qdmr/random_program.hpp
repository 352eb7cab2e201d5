#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdmr/opident.hpp"

namespace qdmr {

// Toy KBs and well-typed QDMRs over them, for property tests and `qdmr gen`.
//
// KB: entities e1..eK, relations "friend" and "boss" (entity valued) and
// "age" (int 1..5); every entity is aliased "item" or "thing".
struct GenStep {
  Operator op = Operator::Select;
  std::vector<int> refs;
  std::string phrase;    // SELECT phrase, relation, or FILTER entity
  std::string relation;  // FILTER / INTERSECTION / PROJECT relation
  std::string symbol;    // agg / sup / com / ari symbol
  std::int64_t n = 0;    // COMPARATIVE threshold
  std::string text;      // the QDMR step, without "return"
};

struct RandomProgram {
  std::string kb_text;
  std::vector<GenStep> steps;
  std::string qdmr_text;
};

struct RandomOptions {
  int max_entities = 8;
  int max_steps = 5;
};

RandomProgram random_program(std::uint64_t seed, const RandomOptions& opts = {});

}  // namespace qdmr
