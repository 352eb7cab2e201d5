#pragma once

#include <fstream>
#include <sstream>
#include <string>

inline std::string fixture(const std::string& rel) { return std::string(QDMR_FIXTURES) + "/" + rel; }

inline std::string read_fixture(const std::string& rel) {
  std::ifstream in(fixture(rel), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + rel);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
