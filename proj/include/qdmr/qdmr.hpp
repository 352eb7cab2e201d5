#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "qdmr/errors.hpp"

namespace qdmr {

enum class Mode { Standard, HighLevel };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view name);  // "standard" | "high"

// A step token: either a lexicon word or a reference "#k" to step k.
class Token {
 public:
  static Token word(std::string w) { return Token(std::move(w), 0); }
  static Token ref(int k) { return Token({}, k); }

  bool is_ref() const noexcept { return ref_ > 0; }
  int ref_index() const noexcept { return ref_; }
  const std::string& text() const noexcept { return word_; }
  std::string str() const;

  friend bool operator==(const Token&, const Token&) = default;
  friend auto operator<=>(const Token&, const Token&) = default;

 private:
  Token(std::string w, int k) : word_(std::move(w)), ref_(k) {}

  std::string word_;
  int ref_ = 0;
};

struct QdmrStep {
  int index = 0;  // 1-based
  std::vector<Token> tokens;

  /// Distinct references in order of first appearance.
  std::vector<int> refs() const;
  std::string text() const;  // tokens joined by single spaces, no "return"

  friend bool operator==(const QdmrStep&, const QdmrStep&) = default;
};

// An ordered list of steps; the last step answers the question.
// Invariant: every reference in step i points to a step k with 1 <= k < i.
class Qdmr {
 public:
  Qdmr() = default;
  Qdmr(std::vector<QdmrStep> steps, Mode mode);

  const std::vector<QdmrStep>& steps() const noexcept { return steps_; }
  const QdmrStep& step(int index) const { return steps_.at(index - 1); }
  int size() const noexcept { return static_cast<int>(steps_.size()); }
  Mode mode() const noexcept { return mode_; }

  friend bool operator==(const Qdmr&, const Qdmr&) = default;

 private:
  std::vector<QdmrStep> steps_;
  Mode mode_ = Mode::Standard;
};

enum class Separator { Semicolon, Sep };

/// Parses the dataset text format: steps separated by ";" (or "[SEP]"), each
/// optionally prefixed by "return". Canonical form is lower case.
/// Throws ParseError with kind EmptyStep, ForwardReference or MalformedRef.
Qdmr parse_qdmr(std::string_view text, Mode mode = Mode::Standard);

/// Inverse of parse_qdmr on canonical forms:
/// "return flights ;return #1 from toronto".
std::string serialize_qdmr(const Qdmr& d, Separator sep = Separator::Semicolon);

enum class SourceDataset {
  Academic, Atis, GeoQuery, Spider, ClevrHumans, Nlvr2, ComQa, Cwq, Drop,
  HotpotQa
};
enum class Split { Train, Dev, Test };

std::string_view to_string(SourceDataset d);
std::string_view to_string(Split s);

struct Question {
  std::string id;
  std::string text;
  SourceDataset source_dataset = SourceDataset::Academic;
  Split split = Split::Train;
};

}  // namespace qdmr
