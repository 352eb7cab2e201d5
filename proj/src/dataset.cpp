#include "qdmr/dataset.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "qdmr/errors.hpp"
#include "qdmr/text.hpp"

namespace qdmr {

std::vector<std::vector<std::string>> parse_csv(std::string_view content) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;  // current row has content
  for (size_t i = 0; i < content.size(); ++i) {
    char c = content[i];
    if (quoted) {
      if (c == '"' && i + 1 < content.size() && content[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any || !field.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        row.clear();
        field.clear();
        any = false;
        break;
      default:
        field += c;
        any = true;
    }
  }
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

SourceDataset source_from_id(std::string_view id) {
  auto up = text::to_lower(id);
  static const std::vector<std::pair<std::string_view, SourceDataset>> prefixes = {
      {"academic", SourceDataset::Academic}, {"atis", SourceDataset::Atis},
      {"geo", SourceDataset::GeoQuery},      {"spider", SourceDataset::Spider},
      {"clevr", SourceDataset::ClevrHumans}, {"nlvr", SourceDataset::Nlvr2},
      {"comqa", SourceDataset::ComQa},       {"cwq", SourceDataset::Cwq},
      {"drop", SourceDataset::Drop},         {"hotpot", SourceDataset::HotpotQa}};
  for (const auto& [p, d] : prefixes)
    if (up.starts_with(p)) return d;
  throw Error("UnknownDataset", "cannot tell the source dataset of '" + std::string(id) + "'");
}

namespace {

std::string squash(std::string_view s) {
  std::string out;
  for (char c : text::to_lower(s))
    if (std::isalnum(static_cast<unsigned char>(c))) out += c;
  return out;
}

int column(const std::vector<std::string>& header, std::initializer_list<std::string_view> names) {
  for (auto n : names)
    for (size_t i = 0; i < header.size(); ++i)
      if (squash(header[i]) == n) return static_cast<int>(i);
  return -1;
}

// "['select', 'filter']" as written by pandas
std::vector<std::string> parse_operator_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  bool in = false;
  for (char c : s) {
    if (c == '\'' || c == '"') {
      if (in) out.push_back(cur);
      cur.clear();
      in = !in;
    } else if (in) {
      cur += c;
    }
  }
  return out;
}

Split split_from(std::string_view s, std::string_view id) {
  auto v = text::to_lower(text::trim(s));
  if (v.empty()) {
    auto low = text::to_lower(id);
    if (low.find("_dev_") != std::string::npos) return Split::Dev;
    if (low.find("_test_") != std::string::npos) return Split::Test;
    return Split::Train;
  }
  if (v == "train") return Split::Train;
  if (v == "dev" || v == "validation") return Split::Dev;
  if (v == "test") return Split::Test;
  throw Error("BadSplit", "unknown split '" + v + "'");
}

void cross_check(const BreakRecord& r, std::vector<OperatorMismatch>& out) {
  if (!r.declared_operators) return;
  auto classes = classify_qdmr(r.decomposition, r.mode);
  const auto& decl = *r.declared_operators;
  for (size_t i = 0; i < classes.size(); ++i) {
    std::string ident = classes[i].instance ? text::to_lower(to_string(classes[i].instance->op)) : "none";
    std::string d = i < decl.size() ? text::to_lower(decl[i]) : "";
    std::string canon = d;
    try {
      canon = text::to_lower(to_string(operator_from_string(d)));
    } catch (const Error&) {
    }
    if (canon != ident) out.push_back({r.question.id, static_cast<int>(i) + 1, d, ident});
  }
}

}  // namespace

LoadResult parse_break_csv(std::string_view content, Mode mode, double max_reject) {
  auto rows = parse_csv(content);
  LoadResult res;
  if (rows.empty()) return res;
  const auto& header = rows.front();
  int c_id = column(header, {"questionid", "id"});
  int c_text = column(header, {"questiontext", "question", "text"});
  int c_dec = column(header, {"decomposition", "qdmr"});
  int c_ops = column(header, {"operators"});
  int c_split = column(header, {"split"});
  if (c_id < 0 || c_text < 0 || c_dec < 0)
    throw Error("BadHeader", "need question_id, question_text and decomposition columns");

  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    ++res.rows;
    int n = static_cast<int>(r);
    auto cell = [&](int c) -> std::string { return c >= 0 && c < static_cast<int>(row.size()) ? row[c] : ""; };
    std::string id = cell(c_id);
    try {
      if (static_cast<int>(row.size()) <= std::max({c_id, c_text, c_dec}))
        throw Error("ShortRow", "expected " + std::to_string(header.size()) + " fields, got " +
                                    std::to_string(row.size()));
      BreakRecord rec;
      rec.mode = id.find("_high") != std::string::npos ? Mode::HighLevel : mode;
      rec.question.id = id;
      rec.question.text = text::trim(cell(c_text));
      if (rec.question.text.empty()) throw Error("EmptyQuestion", "question text is empty");
      rec.question.source_dataset = source_from_id(id);
      rec.question.split = split_from(cell(c_split), id);
      rec.decomposition = parse_qdmr(cell(c_dec), rec.mode);
      if (c_ops >= 0 && !text::trim(cell(c_ops)).empty()) rec.declared_operators = parse_operator_list(cell(c_ops));
      cross_check(rec, res.mismatches);
      res.records.push_back(std::move(rec));
    } catch (const Error& e) {
      res.rejects.push_back({n, id, e.kind(), e.what()});
    }
  }
  if (res.rows > 0 && static_cast<double>(res.rejects.size()) > max_reject * res.rows)
    throw Error("RejectQuota", std::to_string(res.rejects.size()) + " of " + std::to_string(res.rows) +
                                   " rows rejected; first: " + res.rejects.front().message);
  return res;
}

LoadResult load_break_csv(const std::string& path, Mode mode, double max_reject) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_break_csv(ss.str(), mode, max_reject);
}

std::map<Operator, double> operator_prevalence(const std::vector<BreakRecord>& records) {
  if (records.empty()) throw Error("EmptyCorpus", "no records");
  std::map<Operator, double> out;
  for (auto op : all_operators()) out[op] = 0;
  for (const auto& r : records) {
    std::set<Operator> seen;
    for (const auto& c : classify_qdmr(r.decomposition, r.mode))
      if (c.instance) seen.insert(c.instance->op);
    for (auto op : seen) out[op] += 1;
  }
  for (auto& [op, v] : out) v /= static_cast<double>(records.size());
  return out;
}

int length_bucket(int steps) {
  if (steps >= 9) return 4;
  return std::max(0, (steps - 1) / 2);
}

std::array<double, 5> length_distribution(const std::vector<BreakRecord>& records) {
  if (records.empty()) throw Error("EmptyCorpus", "no records");
  std::array<double, 5> out{};
  for (const auto& r : records) out[length_bucket(r.decomposition.size())] += 1;
  for (auto& v : out) v /= static_cast<double>(records.size());
  return out;
}

double compile_rate(const std::vector<BreakRecord>& records) {
  if (records.empty()) throw Error("EmptyCorpus", "no records");
  int ok = 0;
  for (const auto& r : records) {
    try {
      compile_pseudo_lf(r.decomposition, r.mode);
      ++ok;
    } catch (const Error&) {
    }
  }
  return static_cast<double>(ok) / static_cast<double>(records.size());
}

std::string stats_tsv(const std::vector<BreakRecord>& records) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << "operator\tprevalence\n";
  for (const auto& [op, v] : operator_prevalence(records)) os << to_string(op) << '\t' << v << '\n';
  os << "\nlength\tfraction\n";
  auto dist = length_distribution(records);
  for (size_t i = 0; i < dist.size(); ++i) os << kLengthBuckets[i] << '\t' << dist[i] << '\n';
  os << "\ncompiled\t" << compile_rate(records) << '\n';
  return os.str();
}

}  // namespace qdmr
