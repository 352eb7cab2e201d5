#pragma once

#include <string>
#include <string_view>
#include <vector>

// Small string helpers shared across modules.
namespace qdmr::text {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_whitespace(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool starts_with_word(const std::vector<std::string>& tokens, size_t at,
                      const std::vector<std::string>& phrase);

/// Splits free text into lower-cased word tokens; punctuation other than
/// apostrophes and hyphens inside words is dropped.
std::vector<std::string> word_tokens(std::string_view s);

/// Splits a QDMR step into tokens: whitespace separated, with ",", "?", "!",
/// "(", ")" and '"' split off as their own tokens.
std::vector<std::string> step_tokens(std::string_view s);

/// Naive English singular form: "papers" -> "paper", "cities" -> "city",
/// "boxes" -> "box". Words of three letters or fewer are left alone.
std::string singularize(std::string_view word);

/// All rule-based inflections of `word`, including the word itself.
std::vector<std::string> inflections(std::string_view word);

/// Parses an integer or decimal literal or one of the spelled numbers used in
/// annotations ("zero", "one", ..., "ten", "hundred"). Returns false if
/// `token` is not a number.
bool parse_number_token(std::string_view token, long long& numerator,
                        long long& denominator);

}  // namespace qdmr::text
