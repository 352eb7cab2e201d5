// qdmr: command-line front end for the toolkit.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qdmr/annotate.hpp"
#include "qdmr/breakrc.hpp"
#include "qdmr/dataset.hpp"
#include "qdmr/executor.hpp"
#include "qdmr/graph.hpp"
#include "qdmr/lexicon.hpp"
#include "qdmr/metrics.hpp"
#include "qdmr/opident.hpp"
#include "qdmr/random_program.hpp"
#include "qdmr/rulebased.hpp"
#include "qdmr/text.hpp"

namespace {

using namespace qdmr;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!text::trim(line).empty()) out.push_back(line);
  }
  return out;
}

// "id<TAB>text" or bare text (id is the 1-based row number)
std::vector<Question> read_questions(const std::string& path) {
  std::vector<Question> out;
  int row = 0;
  for (const auto& line : read_lines(path)) {
    ++row;
    Question q;
    auto tab = line.find('\t');
    q.id = tab == std::string::npos ? std::to_string(row) : line.substr(0, tab);
    q.text = tab == std::string::npos ? line : line.substr(tab + 1);
    out.push_back(q);
  }
  return out;
}

struct Common {
  std::string mode = "standard";
  Mode parsed_mode() const { return mode_from_string(mode); }
};

void add_mode(CLI::App* cmd, Common& c) {
  cmd->add_option("--mode", c.mode, "standard or high")->check(CLI::IsMember({"standard", "high"}));
}

int cmd_parse(const std::string& in, const std::string& sep, Mode mode) {
  int rc = kOk;
  int row = 0;
  for (const auto& line : read_lines(in)) {
    ++row;
    try {
      auto d = parse_qdmr(line, mode);
      std::cout << serialize_qdmr(d, sep == "sep" ? Separator::Sep : Separator::Semicolon) << '\n';
    } catch (const ParseError& e) {
      std::cerr << "row " << row << " step " << e.step() << ": " << e.kind() << ": " << e.what() << '\n';
      rc = kInvalid;
    }
  }
  return rc;
}

int cmd_validate(const std::string& in, const std::string& questions, Mode mode, int max_refs) {
  auto qs = questions.empty() ? std::vector<Question>{} : read_questions(questions);
  int rc = kOk;
  int row = 0;
  for (const auto& line : read_lines(in)) {
    ++row;
    std::vector<std::string> problems;
    try {
      auto d = parse_qdmr(line, mode);
      for (const auto& issue : validate(to_graph(d))) problems.push_back(issue.message);
      if (!qs.empty()) {
        if (row > static_cast<int>(qs.size())) throw Error("Misaligned", "no question for this row");
        auto lex = build_lexicon(qs[row - 1], max_refs);
        for (const auto& s : d.steps())
          for (const auto& v : check_lexicon(s, lex))
            problems.push_back("step " + std::to_string(s.index) + ": '" + v.token + "' not in lexicon");
      }
    } catch (const Error& e) {
      problems.push_back(e.kind() + ": " + e.what());
    }
    if (problems.empty()) {
      std::cout << row << "\tok\n";
      continue;
    }
    rc = kInvalid;
    std::cout << row << "\tinvalid\n";
    for (const auto& p : problems) std::cerr << "row " << row << ": " << p << '\n';
  }
  return rc;
}

int cmd_compile(const std::string& in, Mode mode, bool graph_only, const std::string& format) {
  int rc = kOk;
  int row = 0;
  for (const auto& line : read_lines(in)) {
    ++row;
    try {
      auto d = parse_qdmr(line, mode);
      if (graph_only) {
        auto g = to_graph(d);
        std::cout << (format == "dot" ? to_dot(g) : format == "json" ? to_json(g) : to_adjacency(g)) << '\n';
        continue;
      }
      std::cout << compile_pseudo_lf(d, mode).str() << '\n';
    } catch (const StepError& e) {
      std::cerr << "row " << row << " step " << e.step() << ": " << e.kind() << ": " << e.what() << '\n';
      rc = kInvalid;
    } catch (const ParseError& e) {
      std::cerr << "row " << row << " step " << e.step() << ": " << e.kind() << ": " << e.what() << '\n';
      rc = kInvalid;
    }
  }
  return rc;
}

int cmd_exec(const std::string& kb_path, const std::string& qdmr_path, Mode mode, bool all_steps) {
  auto kb = KnowledgeBase::load(kb_path);
  int rc = kOk;
  int row = 0;
  for (const auto& line : read_lines(qdmr_path)) {
    ++row;
    try {
      auto d = parse_qdmr(line, mode);
      if (all_steps) {
        auto res = evaluate_steps(kb, d, mode);
        for (size_t i = 0; i < res.size(); ++i) std::cout << "#" << i + 1 << '\t' << res[i].str() << '\n';
      } else {
        std::cout << evaluate_qdmr(kb, d, mode).str() << '\n';
      }
    } catch (const StepError& e) {
      std::cerr << "row " << row << " step " << e.step() << ": " << e.kind() << ": " << e.what() << '\n';
      rc = kInvalid;
    } catch (const ParseError& e) {
      std::cerr << "row " << row << " step " << e.step() << ": " << e.kind() << ": " << e.what() << '\n';
      rc = kInvalid;
    }
  }
  return rc;
}

int cmd_eval(const std::string& gold, const std::string& pred, const std::string& questions,
             const std::string& out, int node_limit, Mode mode) {
  auto g = read_lines(gold);
  auto p = read_lines(pred);
  auto q = read_questions(questions);
  if (g.size() != p.size() || g.size() != q.size()) {
    std::cerr << "gold, pred and questions must have the same number of rows (" << g.size() << ", " << p.size()
              << ", " << q.size() << ")\n";
    return kUsage;
  }
  std::vector<ScoreRow> rows;
  int rc = kOk;
  for (size_t i = 0; i < g.size(); ++i) {
    try {
      rows.push_back({q[i].id, score(q[i].text, parse_qdmr(g[i], mode), parse_qdmr(p[i], mode), {node_limit})});
    } catch (const ParseError& e) {
      std::cerr << "row " << i + 1 << " step " << e.step() << ": " << e.kind() << ": " << e.what() << '\n';
      rc = kInvalid;
    }
  }
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw Error("IoError", "cannot write " + out);
    os << score_table(rows);
  }
  auto m = mean_scores(rows);
  std::printf("em=%.3f sari=%.3f ged=%.3f ged_plus=%.3f\n", m.em, m.sari, m.ged, m.ged_plus);
  return rc;
}

int cmd_decompose(const std::string& tree_path, const std::string& coref, bool steps_only) {
  auto tree = load_dep_tree(tree_path, coref);
  if (steps_only) {
    for (const auto& s : decompose_steps(tree)) std::cout << s << '\n';
  } else {
    std::cout << serialize_qdmr(decompose(tree)) << '\n';
  }
  return kOk;
}

int cmd_stats(const std::string& csv, Mode mode, double max_reject) {
  auto res = load_break_csv(csv, mode, max_reject);
  for (const auto& r : res.rejects)
    std::cerr << "row " << r.row << " (" << r.id << "): " << r.kind << ": " << r.message << '\n';
  for (const auto& m : res.mismatches)
    std::cerr << m.id << " step " << m.step << ": declared " << m.declared << ", identified " << m.identified << '\n';
  std::cout << stats_tsv(res.records);
  std::cout << "rows\t" << res.rows << "\naccepted\t" << res.records.size() << "\nrejected\t" << res.rejects.size()
            << '\n';
  return res.rejects.empty() ? kOk : kInvalid;
}

int cmd_breakrc(const std::string& qdmr_path, const std::string& kb, const std::string& corpus, bool all,
                bool combined, Mode mode) {
  std::unique_ptr<Answerer> answerer;
  if (!kb.empty()) answerer = std::make_unique<KbOracleAnswerer>(KnowledgeBase::load(kb));
  else answerer = std::make_unique<TfIdfCorpusAnswerer>(TfIdfCorpusAnswerer::load(corpus));
  BreakRcOptions opts;
  if (all) opts.project = ProjectMode::AllCandidates;
  int rc = kOk;
  int row = 0;
  for (const auto& line : read_lines(qdmr_path)) {
    ++row;
    try {
      auto d = parse_qdmr(line, mode);
      if (combined) {
        auto r = combined_retrieve(d, *answerer, 10, opts);
        for (const auto& w : r.warnings) std::cerr << "row " << row << ": warning: " << w << '\n';
        std::cout << nlohmann::json{{"row", row}, {"contexts", r.contexts}}.dump() << '\n';
      } else {
        std::cout << run_json(break_rc(d, *answerer, opts), std::to_string(row)) << '\n';
      }
    } catch (const StepError& e) {
      std::cerr << "row " << row << " step " << e.step() << ": " << e.kind() << ": " << e.what() << '\n';
      rc = kInvalid;
    } catch (const ParseError& e) {
      std::cerr << "row " << row << " step " << e.step() << ": " << e.kind() << ": " << e.what() << '\n';
      rc = kInvalid;
    }
  }
  return rc;
}

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

int cmd_serve(std::string host, int port, std::string store, const std::string& questions, const std::string& secret,
              int max_refs) {
  AnnotateConfig cfg;
  cfg.store_path = store;
  cfg.max_refs = max_refs;
  cfg.review_secret = secret;
  if (!questions.empty()) {
    auto res = load_break_csv(questions);
    for (const auto& r : res.records) cfg.questions.push_back(r.question);
  }
  AnnotationService svc(cfg);
  AnnotateServer server(svc);
  int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ":" << port << '\n';
    return kInvalid;
  }
  std::cerr << "listening on http://" << host << ":" << bound << '\n';
  server.listen();
  return kOk;
}

int cmd_gen(std::uint64_t seed, int entities, int steps) {
  auto p = random_program(seed, {entities, steps});
  std::cout << p.kb_text << "---\n" << p.qdmr_text << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QDMR toolkit: parse, validate, execute and score question decompositions"};
  app.require_subcommand(1);
  Common common;

  std::string in, sep = "semicolon";
  auto* parse = app.add_subcommand("parse", "Parse QDMR rows and print their canonical form");
  parse->add_option("--in", in, "one decomposition per line")->required()->check(CLI::ExistingFile);
  parse->add_option("--sep", sep, "semicolon or sep")->check(CLI::IsMember({"semicolon", "sep"}));
  add_mode(parse, common);

  std::string questions;
  int max_refs = 20;
  auto* val = app.add_subcommand("validate", "Check reference structure and lexicon membership");
  val->add_option("--in", in)->required()->check(CLI::ExistingFile);
  val->add_option("--questions", questions, "aligned questions, 'id<TAB>text' or text")->check(CLI::ExistingFile);
  val->add_option("--max-refs", max_refs);
  add_mode(val, common);

  bool graph_only = false;
  std::string format = "adjacency";
  auto* comp = app.add_subcommand("compile", "Identify operators and print pseudo-logical forms");
  comp->add_option("--in", in)->required()->check(CLI::ExistingFile);
  comp->add_flag("--graph", graph_only, "print the decomposition graph instead");
  comp->add_option("--format", format, "graph format")->check(CLI::IsMember({"adjacency", "dot", "json"}));
  add_mode(comp, common);

  std::string kb, qdmr_path;
  bool all_steps = false;
  auto* exec = app.add_subcommand("exec", "Execute decompositions against a knowledge base");
  exec->add_option("--kb", kb, "subject<TAB>relation<TAB>object triples")->required()->check(CLI::ExistingFile);
  exec->add_option("--qdmr", qdmr_path)->required()->check(CLI::ExistingFile);
  exec->add_flag("--steps", all_steps, "print every step's result");
  add_mode(exec, common);

  std::string gold, pred, out;
  int node_limit = 8;
  auto* ev = app.add_subcommand("eval", "Score predictions against gold decompositions");
  ev->add_option("--gold", gold)->required()->check(CLI::ExistingFile);
  ev->add_option("--pred", pred)->required()->check(CLI::ExistingFile);
  ev->add_option("--questions", questions)->required()->check(CLI::ExistingFile);
  ev->add_option("--out", out, "per-example TSV");
  ev->add_option("--node-limit", node_limit, "GED is skipped above this many nodes")->check(CLI::PositiveNumber);
  add_mode(ev, common);

  std::string tree, coref;
  bool steps_only = false;
  auto* dec = app.add_subcommand("decompose", "Rule-based decomposition of a dependency-parsed question");
  dec->add_option("--tree", tree, "tab-separated dependency rows")->required()->check(CLI::ExistingFile);
  dec->add_option("--coref", coref, "coreference spans")->check(CLI::ExistingFile);
  dec->add_flag("--steps", steps_only, "one step per line, original casing");

  std::string csv;
  double max_reject = 0.05;
  auto* st = app.add_subcommand("stats", "Operator prevalence and length distribution of a dataset file");
  st->add_option("--csv", csv)->required()->check(CLI::ExistingFile);
  st->add_option("--max-reject", max_reject)->check(CLI::Range(0.0, 1.0));
  add_mode(st, common);

  std::string corpus;
  bool all_candidates = false, combined = false;
  auto* brc = app.add_subcommand("breakrc", "Answer questions step by step over their decompositions");
  brc->add_option("--qdmr", qdmr_path)->required()->check(CLI::ExistingFile);
  auto* kb_opt = brc->add_option("--kb", kb)->check(CLI::ExistingFile);
  auto* corpus_opt = brc->add_option("--corpus", corpus, "doc_id<TAB>text per line")->check(CLI::ExistingFile);
  kb_opt->excludes(corpus_opt);
  brc->add_flag("--all-candidates", all_candidates, "answer PROJECT steps once per referenced candidate");
  brc->add_flag("--combined", combined, "print the pooled retrieved contexts instead");
  add_mode(brc, common);

  std::string host = "127.0.0.1", store = env_or("QDMR_STORE", "annotations.jsonl"),
              secret = env_or("QDMR_REVIEW_SECRET", "");
  int port = std::atoi(env_or("QDMR_PORT", "8080").c_str());
  auto* serve = app.add_subcommand("serve", "Run the annotation HTTP service");
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--store", store, "JSON-lines annotation store");
  serve->add_option("--questions", questions, "dataset CSV to serve")->check(CLI::ExistingFile);
  serve->add_option("--secret", secret, "reviewer shared secret");
  serve->add_option("--max-refs", max_refs);

  std::uint64_t seed = 0;
  int entities = 8, steps = 5;
  auto* gen = app.add_subcommand("gen", "Print a random toy KB and a decomposition over it");
  gen->add_option("--seed", seed);
  gen->add_option("--entities", entities)->check(CLI::Range(2, 64));
  gen->add_option("--steps", steps)->check(CLI::Range(1, 32));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (brc->parsed() && kb.empty() && corpus.empty()) {
    std::cerr << "breakrc needs --kb or --corpus\n";
    return kUsage;
  }

  try {
    Mode mode = common.parsed_mode();
    if (parse->parsed()) return cmd_parse(in, sep, mode);
    if (val->parsed()) return cmd_validate(in, questions, mode, max_refs);
    if (comp->parsed()) return cmd_compile(in, mode, graph_only, format);
    if (exec->parsed()) return cmd_exec(kb, qdmr_path, mode, all_steps);
    if (ev->parsed()) return cmd_eval(gold, pred, questions, out, node_limit, mode);
    if (dec->parsed()) return cmd_decompose(tree, coref, steps_only);
    if (st->parsed()) return cmd_stats(csv, mode, max_reject);
    if (brc->parsed()) return cmd_breakrc(qdmr_path, kb, corpus, all_candidates, combined, mode);
    if (serve->parsed()) return cmd_serve(host, port, store, questions, secret, max_refs);
    if (gen->parsed()) return cmd_gen(seed, entities, steps);
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}
