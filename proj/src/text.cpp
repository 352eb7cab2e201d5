#include "qdmr/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace qdmr::text {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool starts_with_word(const std::vector<std::string>& tokens, size_t at,
                      const std::vector<std::string>& phrase) {
  if (phrase.empty() || at + phrase.size() > tokens.size()) return false;
  return std::equal(phrase.begin(), phrase.end(), tokens.begin() + at);
}

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-' ||
         static_cast<unsigned char>(c) >= 0x80;
}

}  // namespace

std::vector<std::string> word_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    // Trim quote/hyphen characters hanging off the ends ("'hello'", "--").
    size_t b = 0, e = cur.size();
    while (b < e && (cur[b] == '\'' || cur[b] == '-')) ++b;
    while (e > b && (cur[e - 1] == '\'' || cur[e - 1] == '-')) --e;
    if (e > b) out.push_back(to_lower(std::string_view(cur).substr(b, e - b)));
    cur.clear();
  };
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    // Keep decimal points inside numbers ("2.5").
    if (c == '.' && !cur.empty() && std::isdigit(static_cast<unsigned char>(cur.back())) &&
        i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
      cur += c;
      continue;
    }
    if (is_word_char(c)) {
      cur += c;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::vector<std::string> step_tokens(std::string_view s) {
  static constexpr std::string_view kSplitOff = ",?!()\"";
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (kSplitOff.find(c) != std::string_view::npos) {
      flush();
      out.emplace_back(1, c);
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

namespace {

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) { return std::string_view("aeiou").find(c) != std::string_view::npos; }

}  // namespace

std::string singularize(std::string_view word) {
  std::string w(word);
  if (w.size() <= 3) return w;
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return w;
  if (ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  for (std::string_view es : {"ses", "xes", "zes", "ches", "shes"}) {
    if (ends_with(w, es)) return w.substr(0, w.size() - 2);
  }
  if (ends_with(w, "s")) return w.substr(0, w.size() - 1);
  return w;
}

std::vector<std::string> inflections(std::string_view word) {
  std::set<std::string> out;
  std::string w(word);
  if (w.empty()) return {};
  out.insert(w);
  bool alpha = std::all_of(w.begin(), w.end(),
                           [](unsigned char c) { return std::isalpha(c); });
  if (!alpha || w.size() < 2) return {out.begin(), out.end()};

  // Reduce to a plausible stem, then re-inflect it.
  std::set<std::string> stems{w};
  auto add_stem = [&](std::string s) {
    if (s.size() >= 2) stems.insert(std::move(s));
  };
  if (ends_with(w, "ies")) add_stem(w.substr(0, w.size() - 3) + "y");
  if (ends_with(w, "ied")) add_stem(w.substr(0, w.size() - 3) + "y");
  if (ends_with(w, "es")) add_stem(w.substr(0, w.size() - 2));
  if (ends_with(w, "s") && !ends_with(w, "ss")) add_stem(w.substr(0, w.size() - 1));
  if (ends_with(w, "ing")) {
    add_stem(w.substr(0, w.size() - 3));
    add_stem(w.substr(0, w.size() - 3) + "e");
  }
  if (ends_with(w, "ed")) {
    add_stem(w.substr(0, w.size() - 2));
    add_stem(w.substr(0, w.size() - 1));
  }
  if (ends_with(w, "est")) add_stem(w.substr(0, w.size() - 3));
  if (ends_with(w, "er")) add_stem(w.substr(0, w.size() - 2));

  for (const auto& s : stems) {
    out.insert(s);
    bool y_final = ends_with(s, "y") && s.size() > 1 && !is_vowel(s[s.size() - 2]);
    bool sibilant = ends_with(s, "s") || ends_with(s, "x") || ends_with(s, "z") ||
                    ends_with(s, "ch") || ends_with(s, "sh");
    std::string base = ends_with(s, "e") ? s.substr(0, s.size() - 1) : s;
    if (y_final) {
      std::string b = s.substr(0, s.size() - 1);
      out.insert(b + "ies");
      out.insert(b + "ied");
      out.insert(b + "ier");
      out.insert(b + "iest");
    } else {
      out.insert(sibilant ? s + "es" : s + "s");
      out.insert(base + "ed");
      out.insert(base + "er");
      out.insert(base + "est");
    }
    out.insert(base + "ing");
    out.insert(s + "ing");
  }
  return {out.begin(), out.end()};
}

bool parse_number_token(std::string_view token, long long& numerator,
                        long long& denominator) {
  static const std::array<std::pair<std::string_view, long long>, 12> kSpelled{{
      {"zero", 0}, {"one", 1}, {"two", 2}, {"three", 3}, {"four", 4},
      {"five", 5}, {"six", 6}, {"seven", 7}, {"eight", 8}, {"nine", 9},
      {"ten", 10}, {"hundred", 100}}};
  for (const auto& [name, v] : kSpelled) {
    if (token == name) {
      numerator = v;
      denominator = 1;
      return true;
    }
  }
  if (token.empty()) return false;
  bool negative = token.front() == '-';
  std::string_view body = negative ? token.substr(1) : token;
  auto dot = body.find('.');
  std::string_view int_part = body.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) return false;
  auto all_digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  if (!all_digits(int_part) || !all_digits(frac_part)) return false;
  if (dot != std::string_view::npos && frac_part.empty()) return false;
  if (int_part.size() + frac_part.size() > 17) return false;
  long long num = 0;
  for (char c : int_part) num = num * 10 + (c - '0');
  long long den = 1;
  for (char c : frac_part) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  numerator = negative ? -num : num;
  denominator = den;
  return true;
}

}  // namespace qdmr::text
