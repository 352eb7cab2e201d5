#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qdmr/lexicon.hpp"
#include "qdmr/qdmr.hpp"

namespace qdmr {

inline constexpr int kSchemaVersion = 1;

enum class ReviewTag { Correct, Granular, Incorrect };
std::string_view to_string(ReviewTag t);
ReviewTag review_tag_from_string(std::string_view s);  // throws Error{"BadReviewTag"}

struct AnnotateConfig {
  std::string store_path;  // JSON-lines file, created on first write
  int max_refs = 20;
  std::string review_secret;  // empty disables the reviewer endpoint
  std::vector<Question> questions;
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

// The endpoints as plain functions over JSON bodies; AnnotateServer wires
// them to HTTP.
class AnnotationService {
 public:
  explicit AnnotationService(AnnotateConfig cfg);

  Response lexicon(const nlohmann::json& req) const;                  // POST /lexicon
  Response validate(const nlohmann::json& req) const;                 // POST /validate
  Response submit(const nlohmann::json& req);                         // POST /annotations
  Response next_question(std::string_view split);                     // GET /questions?split=
  Response review(const nlohmann::json& req, std::string_view secret);  // POST /review

  /// Stored annotations with reviews applied, in id order.
  std::vector<nlohmann::json> annotations() const;

 private:
  void append(const nlohmann::json& line);

  AnnotateConfig cfg_;
  mutable std::mutex mu_;
  int next_id_ = 1;
  std::map<int, nlohmann::json> records_;
  std::map<std::string, size_t> cursor_;  // per split, round robin
};

// cpp-httplib server over an AnnotationService, with permissive CORS.
class AnnotateServer {
 public:
  explicit AnnotateServer(AnnotationService& svc);
  ~AnnotateServer();
  AnnotateServer(const AnnotateServer&) = delete;
  AnnotateServer& operator=(const AnnotateServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qdmr
