#include "qdmr/qdmr.hpp"

#include <algorithm>
#include <cctype>

#include "qdmr/text.hpp"

namespace qdmr {

std::string_view to_string(Mode mode) {
  return mode == Mode::Standard ? "standard" : "high";
}

Mode mode_from_string(std::string_view name) {
  std::string n = text::to_lower(name);
  if (n == "standard" || n == "qdmr") return Mode::Standard;
  if (n == "high" || n == "high-level" || n == "highlevel") return Mode::HighLevel;
  throw Error("UnknownMode", "unknown QDMR mode '" + std::string(name) + "'");
}

std::string Token::str() const {
  return is_ref() ? "#" + std::to_string(ref_) : word_;
}

std::vector<int> QdmrStep::refs() const {
  std::vector<int> out;
  for (const auto& t : tokens) {
    if (t.is_ref() && std::find(out.begin(), out.end(), t.ref_index()) == out.end()) {
      out.push_back(t.ref_index());
    }
  }
  return out;
}

std::string QdmrStep::text() const {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i].str();
  }
  return out;
}

Qdmr::Qdmr(std::vector<QdmrStep> steps, Mode mode)
    : steps_(std::move(steps)), mode_(mode) {
  if (steps_.empty()) throw ParseError("EmptyStep", "a QDMR needs at least one step");
  for (size_t i = 0; i < steps_.size(); ++i) {
    auto& s = steps_[i];
    s.index = static_cast<int>(i) + 1;
    if (s.tokens.empty()) {
      throw ParseError("EmptyStep", "step " + std::to_string(s.index) + " is empty",
                       s.index);
    }
    for (const auto& t : s.tokens) {
      if (t.is_ref() && t.ref_index() >= s.index) {
        throw ParseError("ForwardReference",
                         "step " + std::to_string(s.index) + " references #" +
                             std::to_string(t.ref_index()),
                         s.index);
      }
    }
  }
}

namespace {

std::vector<std::string> split_steps(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ';') {
      out.push_back(cur);
      cur.clear();
      ++i;
    } else if (text.substr(i, 5) == "[SEP]" || text.substr(i, 5) == "[sep]") {
      out.push_back(cur);
      cur.clear();
      i += 5;
    } else {
      cur += text[i++];
    }
  }
  out.push_back(cur);
  return out;
}

Token parse_token(const std::string& raw, int step) {
  if (raw.empty() || raw.front() != '#') return Token::word(raw);
  std::string_view digits = std::string_view(raw).substr(1);
  bool numeric = !digits.empty() && digits.size() < 9 &&
                 std::all_of(digits.begin(), digits.end(),
                             [](unsigned char c) { return std::isdigit(c); });
  if (!numeric || std::stoi(std::string(digits)) == 0) {
    throw ParseError("MalformedRef",
                     "step " + std::to_string(step) + ": malformed reference '" + raw + "'",
                     step);
  }
  return Token::ref(std::stoi(std::string(digits)));
}

}  // namespace

Qdmr parse_qdmr(std::string_view text, Mode mode) {
  if (text::trim(text).empty()) throw ParseError("EmptyStep", "empty QDMR text", 1);
  std::vector<QdmrStep> steps;
  int index = 0;
  for (const auto& raw : split_steps(text)) {
    ++index;
    auto tokens = text::step_tokens(text::to_lower(raw));
    if (!tokens.empty() && tokens.front() == "return") tokens.erase(tokens.begin());
    if (tokens.empty()) {
      throw ParseError("EmptyStep", "step " + std::to_string(index) + " is empty", index);
    }
    QdmrStep step;
    step.index = index;
    for (const auto& t : tokens) step.tokens.push_back(parse_token(t, index));
    steps.push_back(std::move(step));
  }
  return Qdmr(std::move(steps), mode);
}

std::string serialize_qdmr(const Qdmr& d, Separator sep) {
  std::string out;
  for (const auto& s : d.steps()) {
    if (s.index > 1) out += sep == Separator::Semicolon ? " ;" : " [SEP] ";
    out += "return " + s.text();
  }
  return out;
}

std::string_view to_string(SourceDataset d) {
  switch (d) {
    case SourceDataset::Academic: return "ACADEMIC";
    case SourceDataset::Atis: return "ATIS";
    case SourceDataset::GeoQuery: return "GEO";
    case SourceDataset::Spider: return "SPIDER";
    case SourceDataset::ClevrHumans: return "CLEVR";
    case SourceDataset::Nlvr2: return "NLVR2";
    case SourceDataset::ComQa: return "COMQA";
    case SourceDataset::Cwq: return "CWQ";
    case SourceDataset::Drop: return "DROP";
    case SourceDataset::HotpotQa: return "HOTPOT";
  }
  return "?";
}

std::string_view to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "?";
}

}  // namespace qdmr
