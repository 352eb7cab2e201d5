#include "qdmr/annotate.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <set>

#include "httplib.h"
#include "qdmr/errors.hpp"
#include "qdmr/graph.hpp"
#include "qdmr/opident.hpp"
#include "qdmr/text.hpp"

namespace qdmr {

using nlohmann::json;

namespace {

Response error(int status, const std::string& msg, json extra = json::object()) {
  extra["schema_version"] = kSchemaVersion;
  extra["error"] = msg;
  return {status, extra};
}

std::string now_iso() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<std::string> string_field(const json& req, const char* name) {
  if (!req.is_object() || !req.contains(name) || !req[name].is_string()) return std::nullopt;
  return req[name].get<std::string>();
}

bool bad_schema(const json& req) {
  return req.is_object() && req.contains("schema_version") && req["schema_version"] != kSchemaVersion;
}

// Tokens of one step on its own, so labels survive errors elsewhere.
std::optional<QdmrStep> loose_step(const std::string& raw, int index) {
  auto toks = text::step_tokens(text::to_lower(raw));
  if (!toks.empty() && toks.front() == "return") toks.erase(toks.begin());
  if (toks.empty()) return std::nullopt;
  QdmrStep s;
  s.index = index;
  for (const auto& t : toks) {
    if (t.size() > 1 && t[0] == '#' && std::all_of(t.begin() + 1, t.end(), ::isdigit) && t.size() < 10 &&
        std::stoi(t.substr(1)) > 0)
      s.tokens.push_back(Token::ref(std::stoi(t.substr(1))));
    else if (t[0] == '#')
      return std::nullopt;
    else
      s.tokens.push_back(Token::word(t));
  }
  return s;
}

}  // namespace

std::string_view to_string(ReviewTag t) {
  switch (t) {
    case ReviewTag::Correct: return "correct";
    case ReviewTag::Granular: return "granular";
    case ReviewTag::Incorrect: return "incorrect";
  }
  return "?";
}

ReviewTag review_tag_from_string(std::string_view s) {
  auto v = text::to_lower(s);
  if (v == "correct" || v == "c") return ReviewTag::Correct;
  if (v == "granular" || v == "c_g" || v == "cg") return ReviewTag::Granular;
  if (v == "incorrect" || v == "i") return ReviewTag::Incorrect;
  throw Error("BadReviewTag", "unknown review tag '" + std::string(s) + "'");
}

AnnotationService::AnnotationService(AnnotateConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.store_path.empty()) return;
  std::ifstream in(cfg_.store_path);
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    auto j = json::parse(line);
    if (j.value("kind", "") == "review") {
      auto it = records_.find(j["annotation_id"].get<int>());
      if (it != records_.end()) it->second["review_tag"] = j["review_tag"];
      continue;
    }
    int id = j["id"].get<int>();
    records_[id] = j;
    next_id_ = std::max(next_id_, id + 1);
  }
}

void AnnotationService::append(const json& line) {
  if (cfg_.store_path.empty()) return;
  std::ofstream out(cfg_.store_path, std::ios::app);
  if (!out) throw Error("IoError", "cannot write " + cfg_.store_path);
  out << line.dump() << '\n';
}

Response AnnotationService::lexicon(const json& req) const {
  if (bad_schema(req)) return error(400, "unsupported schema_version");
  auto q = string_field(req, "question_text");
  if (!q || text::trim(*q).empty()) return error(400, "question_text is required");
  Question question;
  question.text = *q;
  auto lex = build_lexicon(question, cfg_.max_refs);
  json fw = json::array();
  for (const auto& p : lex.function_words().phrases()) fw.push_back(text::join(p, " "));
  return {200,
          {{"schema_version", kSchemaVersion},
           {"tokens", std::vector<std::string>(lex.question_words().begin(), lex.question_words().end())},
           {"function_words", fw},
           {"refs", lex.ref_tokens()}}};
}

Response AnnotationService::validate(const json& req) const {
  if (bad_schema(req)) return error(400, "unsupported schema_version");
  auto q = string_field(req, "question_text");
  if (!q || !req.contains("steps") || !req["steps"].is_array())
    return error(400, "question_text and steps[] are required");
  Mode mode = Mode::Standard;
  try {
    if (auto m = string_field(req, "mode")) mode = mode_from_string(*m);
  } catch (const Error& e) {
    return error(400, e.what());
  }
  std::vector<std::string> raw;
  for (const auto& s : req["steps"]) {
    if (!s.is_string()) return error(400, "steps[] must be strings");
    raw.push_back(s.get<std::string>());
  }
  Question question;
  question.text = *q;
  auto lex = build_lexicon(question, cfg_.max_refs);

  json violations = json::array(), operators = json::array(), errors = json::array();
  for (size_t i = 0; i < raw.size(); ++i) {
    int idx = static_cast<int>(i) + 1;
    auto step = loose_step(raw[i], idx);
    if (!step) {
      operators.push_back(nullptr);
      continue;
    }
    for (const auto& v : check_lexicon(*step, lex))
      violations.push_back({{"step", idx}, {"token", v.token}, {"position", v.position}});
    try {
      operators.push_back(std::string(to_string(identify_operator(*step, mode).op)));
    } catch (const Error&) {
      operators.push_back(nullptr);
    }
  }
  json graph = nullptr;
  if (raw.empty()) {
    errors.push_back({{"step", 0}, {"kind", "EmptyStep"}, {"message", "no steps"}});
  } else {
    std::vector<std::string> parts;
    for (const auto& r : raw) parts.push_back(text::trim(r).empty() ? "" : r);
    try {
      auto d = parse_qdmr(text::join(parts, " ;"), mode);
      if (static_cast<int>(parts.size()) != d.size())
        throw ParseError("EmptyStep", "a step is empty");
      graph = json::parse(to_json(to_graph(d)));
    } catch (const ParseError& e) {
      errors.push_back({{"step", e.step()}, {"kind", e.kind()}, {"message", e.what()}});
    }
  }
  bool valid = violations.empty() && errors.empty();
  return {200,
          {{"schema_version", kSchemaVersion},
           {"valid", valid},
           {"violations", violations},
           {"operators", operators},
           {"graph", graph},
           {"errors", errors}}};
}

Response AnnotationService::submit(const json& req) {
  auto v = validate(req);
  if (v.status != 200) return v;
  if (!v.body["valid"].get<bool>())
    return error(409, "annotation does not validate",
                 {{"violations", v.body["violations"]}, {"errors", v.body["errors"]}});
  json rec{{"schema_version", kSchemaVersion},
           {"kind", "annotation"},
           {"question_id", req.value("question_id", "")},
           {"question_text", req["question_text"]},
           {"steps", req["steps"]},
           {"mode", req.value("mode", "standard")},
           {"annotator_id", req.value("annotator_id", "")},
           {"timestamp", now_iso()},
           {"validation", {{"operators", v.body["operators"]}, {"graph", v.body["graph"]}}},
           {"review_tag", nullptr}};
  std::lock_guard lock(mu_);
  rec["id"] = next_id_;
  append(rec);
  records_[next_id_] = rec;
  return {200, {{"schema_version", kSchemaVersion}, {"id", next_id_++}}};
}

Response AnnotationService::next_question(std::string_view split) {
  std::lock_guard lock(mu_);
  std::set<std::string> done;
  for (const auto& [_, r] : records_) done.insert(r.value("question_id", ""));
  std::vector<const Question*> pool;
  for (const auto& q : cfg_.questions)
    if ((split.empty() || to_string(q.split) == split) && !done.contains(q.id)) pool.push_back(&q);
  if (pool.empty()) return error(404, "no unannotated questions");
  auto& c = cursor_[std::string(split)];
  const auto* q = pool[c % pool.size()];
  ++c;
  return {200,
          {{"schema_version", kSchemaVersion},
           {"question",
            {{"id", q->id},
             {"text", q->text},
             {"split", std::string(to_string(q->split))},
             {"source_dataset", std::string(to_string(q->source_dataset))}}}}};
}

Response AnnotationService::review(const json& req, std::string_view secret) {
  if (cfg_.review_secret.empty() || secret != cfg_.review_secret) return error(403, "reviewer secret required");
  if (!req.is_object() || !req.contains("id") || !req["id"].is_number_integer())
    return error(400, "id is required");
  ReviewTag tag;
  try {
    tag = review_tag_from_string(req.value("review_tag", ""));
  } catch (const Error& e) {
    return error(400, e.what());
  }
  std::lock_guard lock(mu_);
  int id = req["id"].get<int>();
  auto it = records_.find(id);
  if (it == records_.end()) return error(404, "no annotation " + std::to_string(id));
  json line{{"schema_version", kSchemaVersion},
            {"kind", "review"},
            {"annotation_id", id},
            {"review_tag", std::string(to_string(tag))},
            {"timestamp", now_iso()}};
  append(line);
  it->second["review_tag"] = line["review_tag"];
  return {200, {{"schema_version", kSchemaVersion}, {"id", id}, {"review_tag", line["review_tag"]}}};
}

std::vector<json> AnnotationService::annotations() const {
  std::lock_guard lock(mu_);
  std::vector<json> out;
  for (const auto& [_, r] : records_) out.push_back(r);
  return out;
}

struct AnnotateServer::Impl {
  explicit Impl(AnnotationService& a) : svc(a) {}
  AnnotationService& svc;
  httplib::Server server;
};

AnnotateServer::AnnotateServer(AnnotationService& svc) : impl_(std::make_unique<Impl>(svc)) {
  auto& s = impl_->server;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Headers", "Content-Type, X-Review-Secret"},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto body = [](const httplib::Request& req) -> std::optional<json> {
    auto j = json::parse(req.body, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    return j;
  };
  auto post = [&, reply, body](const char* path, auto fn) {
    s.Post(path, [this, reply, body, fn](const httplib::Request& req, httplib::Response& res) {
      auto j = body(req);
      if (!j) return reply(res, error(400, "body is not JSON"));
      reply(res, fn(impl_->svc, *j, req));
    });
  };
  post("/lexicon", [](AnnotationService& a, const json& j, const httplib::Request&) { return a.lexicon(j); });
  post("/validate", [](AnnotationService& a, const json& j, const httplib::Request&) { return a.validate(j); });
  post("/annotations", [](AnnotationService& a, const json& j, const httplib::Request&) { return a.submit(j); });
  post("/review", [](AnnotationService& a, const json& j, const httplib::Request& req) {
    return a.review(j, req.get_header_value("X-Review-Secret"));
  });
  s.Get("/questions", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, impl_->svc.next_question(req.get_param_value("split")));
  });
  s.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

AnnotateServer::~AnnotateServer() { stop(); }

int AnnotateServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void AnnotateServer::listen() { impl_->server.listen_after_bind(); }

void AnnotateServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace qdmr
