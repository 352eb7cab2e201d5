#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace qdmr {

using Number = boost::rational<std::int64_t>;

struct EntityId {
  std::string id;
  friend bool operator==(const EntityId&, const EntityId&) = default;
  friend auto operator<=>(const EntityId&, const EntityId&) = default;
};

struct Text {
  std::string text;
  friend bool operator==(const Text&, const Text&) = default;
  friend auto operator<=>(const Text&, const Text&) = default;
};

// An entity, an exact number, a truth value or free text.
class Value {
 public:
  Value() : v_(EntityId{}) {}
  Value(EntityId e) : v_(std::move(e)) {}
  Value(Number n) : v_(n) {}
  Value(bool b) : v_(b) {}
  Value(Text t) : v_(std::move(t)) {}

  static Value entity(std::string id) { return Value(EntityId{std::move(id)}); }
  static Value number(std::int64_t n, std::int64_t d = 1) { return Value(Number(n, d)); }
  static Value text(std::string s) { return Value(Text{std::move(s)}); }

  bool is_entity() const { return std::holds_alternative<EntityId>(v_); }
  bool is_number() const { return std::holds_alternative<Number>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_text() const { return std::holds_alternative<Text>(v_); }

  const EntityId& as_entity() const;  // these throw Error{"TypeError"}
  const Number& as_number() const;
  bool as_bool() const;
  const Text& as_text() const;

  /// "A", "3", "5/2", "true", "\"text\""
  std::string str() const;
  /// KB file spelling: bare id, "int:3", "num:5/2", "bool:true", "str:..."
  std::string typed() const;

  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
  friend bool operator<(const Value& a, const Value& b);

 private:
  std::variant<EntityId, Number, bool, Text> v_;
};

/// Parses a typed KB object. Throws Error{"BadValue"}.
Value parse_value(std::string_view s);

/// Decimal / fraction literal ("3", "-2", "2.5", "7/2") to an exact number.
std::optional<Number> parse_number(std::string_view s);

std::string number_str(const Number& n);

}  // namespace qdmr
