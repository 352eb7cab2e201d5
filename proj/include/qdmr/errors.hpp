#pragma once

#include <stdexcept>
#include <string>

namespace qdmr {

// Root of every exception the toolkit throws. `kind()` is a stable machine
// name ("ForwardReference", "NoTemplateMatch", ...) used in diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Errors raised while parsing QDMR text.
class ParseError : public Error {
 public:
  ParseError(std::string kind, const std::string& message, int step = 0)
      : Error(std::move(kind), message), step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

// Failures local to one step of a decomposition, annotated with its index.
class StepError : public Error {
 public:
  StepError(std::string kind, const std::string& message, int step)
      : Error(std::move(kind), message), step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

}  // namespace qdmr
