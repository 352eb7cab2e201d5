#include "qdmr/breakrc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"
#include "qdmr/errors.hpp"
#include "qdmr/text.hpp"

namespace qdmr {

namespace {

std::string norm(std::string_view s) { return text::join(text::split_whitespace(text::to_lower(s)), " "); }

using Lineage = std::vector<std::pair<int, std::string>>;

Lineage with_head(int step, const Candidate& c) {
  Lineage out{{step, c.text}};
  out.insert(out.end(), c.lineage.begin(), c.lineage.end());
  return out;
}

std::string substitute(const QdmrStep& s, const std::map<int, std::string>& by_ref) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) {
    auto it = t.is_ref() ? by_ref.find(t.ref_index()) : by_ref.end();
    out.push_back(it != by_ref.end() ? it->second : t.str());
  }
  return text::join(out, " ");
}

std::string symbol(const OperatorInstance& inst, const std::string& name, KeywordClass c) {
  if (const auto* v = inst.constant(name)) return *v;
  return resolve_keyword(c, inst.require("w_" + name));
}

double number_of(const Candidate& c) {
  if (c.value && c.value->is_number()) return boost::rational_cast<double>(c.value->as_number());
  if (auto v = parse_answer_number(c.text)) return *v;
  throw Error("NonNumericAnswer", "cannot compare '" + c.text + "'");
}

bool holds(double x, const std::string& com, double y) {
  if (com == "<") return x < y;
  if (com == "<=") return x <= y;
  if (com == ">") return x > y;
  if (com == ">=") return x >= y;
  if (com == "=") return x == y;
  if (com == "!=") return x != y;
  throw Error("UnknownKeyword", "unknown comparison '" + com + "'");
}

bool derived_from(const Candidate& y, int step, const std::string& text) {
  return std::any_of(y.lineage.begin(), y.lineage.end(),
                     [&](const auto& a) { return a.first == step && a.second == text; });
}

const AnswerDistribution& ref_answer(const std::vector<AnswerDistribution>& ansrs, int k) {
  if (k < 1 || k > static_cast<int>(ansrs.size()))
    throw Error("PreconditionViolation", "reference #" + std::to_string(k) + " has no answer yet");
  return ansrs[k - 1];
}

const std::vector<std::string> kMonths = {"january", "february", "march",     "april",   "may",      "june",
                                          "july",    "august",   "september", "october", "november", "december"};

int month_of(const std::string& w) {
  for (size_t i = 0; i < kMonths.size(); ++i)
    if (w == kMonths[i] || (w.size() >= 3 && kMonths[i].starts_with(w) && w.size() <= kMonths[i].size()))
      return static_cast<int>(i) + 1;
  return 0;
}

std::optional<double> plain_number(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ','), s.end());
  if (s.empty()) return std::nullopt;
  size_t used = 0;
  try {
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  return std::nullopt;
}

}  // namespace

const Candidate* AnswerDistribution::top() const {
  const Candidate* best = nullptr;
  for (const auto& c : candidates)
    if (!best || c.prob > best->prob) best = &c;
  return best;
}

void AnswerDistribution::normalize() {
  double total = 0;
  for (const auto& c : candidates) total += c.prob;
  if (total <= 0) return;
  for (auto& c : candidates) c.prob /= total;
}

std::optional<double> parse_answer_number(std::string_view raw) {
  auto words = text::split_whitespace(text::to_lower(raw));
  for (auto& w : words) {
    while (!w.empty() && (w.back() == ',' || w.back() == '.')) w.pop_back();
  }
  std::erase_if(words, [](const std::string& w) { return w.empty(); });
  if (words.size() == 1) return plain_number(words[0]);
  auto year = [](const std::string& w) -> std::optional<double> {
    if (w.size() != 4 || !std::all_of(w.begin(), w.end(), ::isdigit)) return std::nullopt;
    return std::stod(w);
  };
  auto day = [](const std::string& w) -> std::optional<int> {
    std::string d = w;
    for (auto suf : {"st", "nd", "rd", "th"})
      if (d.size() > 2 && d.ends_with(suf)) d.resize(d.size() - 2);
    if (d.empty() || d.size() > 2 || !std::all_of(d.begin(), d.end(), ::isdigit)) return std::nullopt;
    int v = std::stoi(d);
    if (v < 1 || v > 31) return std::nullopt;
    return v;
  };
  auto date = [](double y, int m, int d) { return y + (m - 1) / 12.0 + (d - 1) / 372.0; };
  if (words.size() == 3) {
    auto y = year(words[2]);
    if (!y) return std::nullopt;
    if (int m = month_of(words[1]); m && day(words[0])) return date(*y, m, *day(words[0]));
    if (int m = month_of(words[0]); m && day(words[1])) return date(*y, m, *day(words[1]));
    return std::nullopt;
  }
  if (words.size() == 2) {
    if (int m = month_of(words[0]); m && year(words[1])) return date(*year(words[1]), m, 1);
  }
  return std::nullopt;
}

std::string step_subject(const QdmrStep& s) {
  static const std::set<std::string, std::less<>> wh = {"when", "what", "who", "where", "which", "how", "whom"};
  static const std::set<std::string, std::less<>> aux = {"was", "is", "are", "were", "did", "does", "do",
                                                        "has", "have", "had"};
  std::vector<std::string> words;
  for (const auto& t : s.tokens) words.push_back(t.str());
  size_t start = !words.empty() && wh.contains(words.front()) ? 1 : 0;
  size_t end = words.size();
  for (size_t i = words.size(); i > start; --i)
    if (aux.contains(words[i - 1])) {
      end = i - 1;
      break;
    }
  if (end <= start) end = words.size();
  return text::join({words.begin() + static_cast<long>(start), words.begin() + static_cast<long>(end)}, " ");
}

std::string extract_question(const QdmrStep& s) {
  auto refs = s.refs();
  if (refs.size() != 1)
    throw Error("PreconditionViolation", "normalized question needs exactly one reference, step has " +
                                             std::to_string(refs.size()));
  return substitute(s, {{refs[0], "which entities"}});
}

AnswerDistribution intersect_answers(const AnswerDistribution& a, const AnswerDistribution& b) {
  std::map<std::string, double> pa;
  for (const auto& c : a.candidates) pa[norm(c.text)] += c.prob;
  AnswerDistribution out;
  out.retrieved = a.retrieved;
  out.retrieved.insert(out.retrieved.end(), b.retrieved.begin(), b.retrieved.end());
  for (const auto& c : b.candidates) {
    auto it = pa.find(norm(c.text));
    if (it == pa.end() || it->second * c.prob <= 0) continue;
    Candidate x = c;
    x.prob = c.prob * it->second;
    out.candidates.push_back(std::move(x));
  }
  out.no_overlap = out.candidates.empty();
  out.normalize();
  return out;
}

AnswerDistribution compare_steps(const OperatorInstance& inst, const Qdmr& d,
                                 const std::vector<AnswerDistribution>& ansrs) {
  AnswerDistribution out;
  if (inst.op == Operator::Comparative) {
    if (inst.refs.size() != 2) throw Error("ArityMismatch", "COMPARATIVE needs two references");
    auto com = symbol(inst, "com", KeywordClass::Com);
    auto n = parse_answer_number(inst.require("n"));
    if (!n) throw Error("NonNumericAnswer", "cannot compare with '" + inst.require("n") + "'");
    int a = inst.refs[0];
    const auto& keys = ref_answer(ansrs, a);
    const auto& nums = ref_answer(ansrs, inst.refs[1]);
    for (const auto& x : keys.candidates)
      for (const auto& y : nums.candidates)
        if (derived_from(y, a, x.text) && holds(number_of(y), com, *n)) {
          out.candidates.push_back({x.text, x.prob, x.value, with_head(a, x)});
          break;
        }
    out.normalize();
    return out;
  }
  if (inst.op != Operator::Superlative) throw Error("UnsupportedOperator", "not a comparison");
  bool highest = symbol(inst, "sup", KeywordClass::Sup) == "argmax";
  auto better = [&](double x, double best) { return highest ? x > best : x < best; };

  if (inst.has("among")) {
    // one value per referenced step; the winner is what that step is about
    std::vector<std::pair<double, Candidate>> vals;
    for (int r : inst.refs) {
      const auto* c = ref_answer(ansrs, r).top();
      if (!c) throw Error("NonNumericAnswer", "step " + std::to_string(r) + " has no answer");
      Candidate who{c->lineage.empty() ? step_subject(d.step(r)) : c->lineage.front().second, 0, std::nullopt, {}};
      vals.emplace_back(number_of(*c), who);
    }
    double best = vals.front().first;
    for (const auto& [v, _] : vals)
      if (better(v, best)) best = v;
    for (auto& [v, c] : vals)
      if (v == best) out.candidates.push_back({c.text, 1.0, std::nullopt, {}});
    out.normalize();
    return out;
  }

  if (inst.refs.size() != 2) throw Error("ArityMismatch", "SUPERLATIVE needs two references");
  int a = inst.refs[0];
  const auto& keys = ref_answer(ansrs, a);
  const auto& nums = ref_answer(ansrs, inst.refs[1]);
  std::optional<double> best;
  std::vector<std::pair<const Candidate*, std::vector<double>>> keyed;
  for (const auto& x : keys.candidates) {
    std::vector<double> vs;
    for (const auto& y : nums.candidates)
      if (derived_from(y, a, x.text)) vs.push_back(number_of(y));
    for (double v : vs)
      if (!best || better(v, *best)) best = v;
    keyed.emplace_back(&x, vs);
  }
  if (!best) return out;
  for (const auto& [x, vs] : keyed)
    if (std::find(vs.begin(), vs.end(), *best) != vs.end())
      out.candidates.push_back({x->text, 1.0, x->value, with_head(a, *x)});
  out.normalize();
  return out;
}

BreakRcRun break_rc(const Qdmr& d, const Answerer& answerer, const BreakRcOptions& opts) {
  BreakRcRun run;
  std::vector<AnswerDistribution> ansrs;
  for (const auto& s : d.steps()) {
    StepAnswer sa;
    sa.step = s.index;
    auto ask = [&](const std::string& q) {
      sa.queries.push_back(q);
      try {
        return answerer.answer(q);
      } catch (const std::exception& e) {
        throw StepError("AnswererFailure", "step " + std::to_string(s.index) + ": " + e.what(), s.index);
      }
    };
    auto top_text = [&](int r) -> std::optional<std::string> {
      const auto* c = ref_answer(ansrs, r).top();
      if (!c) return std::nullopt;
      return c->text;
    };
    try {
      auto inst = identify_operator(s, d.mode());
      sa.op = inst.op;
      AnswerDistribution ans;
      switch (inst.op) {
        case Operator::Select:
          ans = ask(s.text());
          break;
        case Operator::Project: {
          if (inst.refs.size() == 1 && opts.project == ProjectMode::AllCandidates) {
            int r = inst.refs[0];
            for (const auto& c : ref_answer(ansrs, r).candidates) {
              auto a = ask(substitute(s, {{r, c.text}}));
              for (auto& x : a.candidates) {
                x.prob *= c.prob;
                x.lineage = with_head(r, c);
                ans.candidates.push_back(std::move(x));
              }
              ans.retrieved.insert(ans.retrieved.end(), a.retrieved.begin(), a.retrieved.end());
            }
            ans.normalize();
            break;
          }
          std::map<int, std::string> by_ref;
          for (int r : inst.refs) {
            auto t = top_text(r);
            if (!t) break;
            by_ref[r] = *t;
          }
          if (by_ref.size() != inst.refs.size()) break;  // nothing to substitute: empty answer
          ans = ask(substitute(s, by_ref));
          const auto* c = ref_answer(ansrs, inst.refs[0]).top();
          for (auto& x : ans.candidates) x.lineage = with_head(inst.refs[0], *c);
          break;
        }
        case Operator::Filter: {
          int r = inst.refs.at(0);
          std::map<int, std::string> others;
          for (size_t i = 1; i < inst.refs.size(); ++i)
            if (auto t = top_text(inst.refs[i])) others[inst.refs[i]] = *t;
          QdmrStep single = s;
          if (!others.empty()) single = parse_qdmr(substitute(s, others)).step(1);
          auto tmp = ask(extract_question(single));
          ans = intersect_answers(tmp, ref_answer(ansrs, r));
          for (auto& x : ans.candidates) x.lineage = with_head(r, x);
          break;
        }
        case Operator::Intersection: {
          const auto& w = inst.require("w");
          bool first = true;
          for (int r : inst.refs) {
            auto t = top_text(r);
            auto a = t ? ask(w + " of " + *t) : AnswerDistribution{};
            ans = first ? a : intersect_answers(a, ans);
            first = false;
          }
          break;
        }
        case Operator::Comparative:
        case Operator::Superlative:
          ans = compare_steps(inst, d, ansrs);
          break;
        default:
          throw Error("UnsupportedOperator", std::string(to_string(inst.op)) + " steps are not answered");
      }
      sa.answer = ans;
      ansrs.push_back(std::move(ans));
      run.steps.push_back(std::move(sa));
    } catch (const StepError&) {
      throw;
    } catch (const Error& e) {
      throw StepError(e.kind(), "step " + std::to_string(s.index) + ": " + e.what(), s.index);
    }
  }
  return run;
}

CombinedRetrieval combined_retrieve(const Qdmr& d, const Answerer& answerer, int limit,
                                    const BreakRcOptions& opts) {
  CombinedRetrieval out;
  if (!answerer.retrieves()) {
    out.warnings.push_back("answerer does not retrieve contexts");
    return out;
  }
  auto run = break_rc(d, answerer, opts);
  // rank within its own retrieval call, then call order
  struct Hit {
    size_t rank, call;
    std::string id;
  };
  std::vector<Hit> hits;
  size_t call = 0;
  for (const auto& s : run.steps) {
    for (size_t i = 0; i < s.answer.retrieved.size(); ++i) hits.push_back({i, call, s.answer.retrieved[i]});
    ++call;
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const Hit& a, const Hit& b) { return std::tie(a.rank, a.call) < std::tie(b.rank, b.call); });
  std::set<std::string> seen;
  for (const auto& h : hits) {
    if (static_cast<int>(out.contexts.size()) >= limit) break;
    if (seen.insert(h.id).second) out.contexts.push_back(h.id);
  }
  return out;
}

std::string run_json(const BreakRcRun& run, const std::string& question_id) {
  using nlohmann::json;
  auto dist = [](const AnswerDistribution& a) {
    json cands = json::array();
    for (const auto& c : a.candidates) cands.push_back({{"text", c.text}, {"prob", c.prob}});
    return cands;
  };
  json steps = json::array();
  for (const auto& s : run.steps)
    steps.push_back({{"step", s.step},
                     {"op", std::string(to_string(s.op))},
                     {"queries", s.queries},
                     {"answers", dist(s.answer)},
                     {"retrieved", s.answer.retrieved},
                     {"no_overlap", s.answer.no_overlap}});
  json j{{"steps", steps}, {"final", run.steps.empty() ? json::array() : dist(run.final())}};
  if (!question_id.empty()) j["question_id"] = question_id;
  return j.dump();
}

}  // namespace qdmr
