#include "qdmr/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "qdmr/errors.hpp"
#include "qdmr/text.hpp"

namespace qdmr {

int exact_match(const Qdmr& gold, const Qdmr& pred) {
  return serialize_qdmr(gold) == serialize_qdmr(pred) ? 1 : 0;
}

std::vector<std::string> decomposition_tokens(const Qdmr& d) {
  std::vector<std::string> out;
  for (const auto& s : d.steps()) {
    if (!out.empty()) out.push_back(";");
    for (const auto& t : s.tokens) out.push_back(t.str());
  }
  return out;
}

namespace {

using Counter = std::map<std::string, int>;

Counter ngrams(const std::vector<std::string>& toks, size_t n) {
  Counter c;
  for (size_t i = 0; i + n <= toks.size(); ++i) {
    std::string g = toks[i];
    for (size_t j = 1; j < n; ++j) g += " " + toks[i + j];
    ++c[g];
  }
  return c;
}

Counter intersect(const Counter& a, const Counter& b) {
  Counter out;
  for (const auto& [g, n] : a) {
    auto it = b.find(g);
    if (it != b.end()) out[g] = std::min(n, it->second);
  }
  return out;
}

Counter subtract(const Counter& a, const Counter& b) {
  Counter out;
  for (const auto& [g, n] : a) {
    auto it = b.find(g);
    int left = n - (it == b.end() ? 0 : it->second);
    if (left > 0) out[g] = left;
  }
  return out;
}

int get(const Counter& c, const std::string& g) {
  auto it = c.find(g);
  return it == c.end() ? 0 : it->second;
}

double f1(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

struct Components {
  double keep = 0, del = 0, add = 0;
};

// One n-gram order of SARI with a single reference.
Components sari_n(const Counter& s, const Counter& c, const Counter& r) {
  Components out;

  Counter keep = intersect(s, c);
  Counter keep_good = intersect(keep, r);
  Counter keep_all = intersect(s, r);
  double kp = 0, kr = 0;
  for (const auto& [g, n] : keep) {
    kp += static_cast<double>(get(keep_good, g)) / n;
    kr += static_cast<double>(get(keep_good, g)) / std::max(1, get(keep_all, g));
  }
  kp = keep.empty() ? 0.0 : kp / keep.size();
  kr = keep_all.empty() ? 0.0 : kr / keep_all.size();
  out.keep = f1(kp, kr);

  Counter del = subtract(s, c);
  Counter del_good = subtract(del, r);
  double dp = 0;
  for (const auto& [g, n] : del) dp += static_cast<double>(get(del_good, g)) / n;
  out.del = del.empty() ? 0.0 : dp / del.size();

  std::set<std::string> add, add_all;
  for (const auto& [g, _] : c)
    if (!s.count(g)) add.insert(g);
  for (const auto& [g, _] : r)
    if (!s.count(g)) add_all.insert(g);
  size_t good = 0;
  for (const auto& g : add) good += add_all.count(g);
  double ap = add.empty() ? 0.0 : static_cast<double>(good) / add.size();
  double ar = add_all.empty() ? 0.0 : static_cast<double>(good) / add_all.size();
  out.add = f1(ap, ar);
  return out;
}

}  // namespace

double sari_tokens(const std::vector<std::string>& source, const std::vector<std::string>& gold,
                   const std::vector<std::string>& pred) {
  if (pred == gold) return 1.0;
  Components sum;
  for (size_t n = 1; n <= 4; ++n) {
    auto c = sari_n(ngrams(source, n), ngrams(pred, n), ngrams(gold, n));
    sum.keep += c.keep;
    sum.del += c.del;
    sum.add += c.add;
  }
  return (sum.keep / 4 + sum.del / 4 + sum.add / 4) / 3;
}

double sari(const std::string& source, const Qdmr& gold, const Qdmr& pred) {
  return sari_tokens(text::word_tokens(source), decomposition_tokens(gold), decomposition_tokens(pred));
}

double align_ratio(const std::vector<std::string>& u, const std::vector<std::string>& v) {
  if (u.empty() && v.empty()) return 1.0;
  auto norm = [](const std::vector<std::string>& toks) {
    std::map<std::string, int> bag;
    for (const auto& t : toks) ++bag[t.size() > 1 && t[0] == '#' ? "#REF" : text::to_lower(t)];
    return bag;
  };
  auto a = norm(u), b = norm(v);
  int common = 0;
  for (const auto& [t, n] : a) common += std::min(n, get(b, t));
  return 2.0 * common / static_cast<double>(u.size() + v.size());
}

double align_ratio(const std::vector<Token>& u, const std::vector<Token>& v) {
  std::vector<std::string> a, b;
  for (const auto& t : u) a.push_back(t.str());
  for (const auto& t : v) b.push_back(t.str());
  return align_ratio(a, b);
}

MetricReport score(const std::string& question, const Qdmr& gold, const Qdmr& pred, const GedOptions& opts) {
  MetricReport r;
  r.exact_match = exact_match(gold, pred);
  r.sari = sari(question, gold, pred);
  auto ga = to_graph(gold), gb = to_graph(pred);
  try {
    r.ged = ged(ga, gb, opts);
  } catch (const Error& e) {
    r.ged_skip = e.what();
  }
  try {
    r.ged_plus = ged_plus(ga, gb);
  } catch (const Error& e) {
    r.ged_plus_skip = e.what();
  }
  return r;
}

MetricMeans mean_scores(const std::vector<ScoreRow>& rows) {
  MetricMeans m;
  for (const auto& row : rows) {
    m.em += row.report.exact_match;
    m.sari += row.report.sari;
    if (row.report.ged) {
      m.ged += *row.report.ged;
      ++m.ged_n;
    }
    if (row.report.ged_plus) {
      m.ged_plus += *row.report.ged_plus;
      ++m.ged_plus_n;
    }
  }
  if (!rows.empty()) {
    m.em /= rows.size();
    m.sari /= rows.size();
  }
  if (m.ged_n) m.ged /= m.ged_n;
  if (m.ged_plus_n) m.ged_plus /= m.ged_plus_n;
  return m;
}

namespace {
std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}
std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : "skipped"; }
}  // namespace

std::string score_table(const std::vector<ScoreRow>& rows) {
  std::string out = "id\tem\tsari\tged\tged_plus\n";
  for (const auto& r : rows)
    out += r.id + "\t" + std::to_string(r.report.exact_match) + "\t" + fmt(r.report.sari) + "\t" +
           fmt(r.report.ged) + "\t" + fmt(r.report.ged_plus) + "\n";
  auto m = mean_scores(rows);
  out += "mean\t" + fmt(m.em) + "\t" + fmt(m.sari) + "\t" + (m.ged_n ? fmt(m.ged) : "skipped") + "\t" +
         (m.ged_plus_n ? fmt(m.ged_plus) : "skipped") + "\n";
  return out;
}

}  // namespace qdmr
