#include "qdmr/value.hpp"

#include <charconv>

#include "qdmr/errors.hpp"
#include "qdmr/text.hpp"

namespace qdmr {

namespace {
[[noreturn]] void type_error(const Value& v, const char* want) {
  throw Error("TypeError", "expected " + std::string(want) + ", got " + v.str());
}

int rank(const Value& v) {
  if (v.is_entity()) return 0;
  if (v.is_number()) return 1;
  if (v.is_bool()) return 2;
  return 3;
}
}  // namespace

const EntityId& Value::as_entity() const {
  if (!is_entity()) type_error(*this, "entity");
  return std::get<EntityId>(v_);
}
const Number& Value::as_number() const {
  if (!is_number()) type_error(*this, "number");
  return std::get<Number>(v_);
}
bool Value::as_bool() const {
  if (!is_bool()) type_error(*this, "boolean");
  return std::get<bool>(v_);
}
const Text& Value::as_text() const {
  if (!is_text()) type_error(*this, "text");
  return std::get<Text>(v_);
}

std::string number_str(const Number& n) {
  if (n.denominator() == 1) return std::to_string(n.numerator());
  return std::to_string(n.numerator()) + "/" + std::to_string(n.denominator());
}

std::string Value::str() const {
  if (is_entity()) return as_entity().id;
  if (is_number()) return number_str(as_number());
  if (is_bool()) return as_bool() ? "true" : "false";
  return "\"" + as_text().text + "\"";
}

std::string Value::typed() const {
  if (is_entity()) return as_entity().id;
  if (is_number()) {
    const auto& n = as_number();
    return (n.denominator() == 1 ? "int:" : "num:") + number_str(n);
  }
  if (is_bool()) return as_bool() ? "bool:true" : "bool:false";
  return "str:" + as_text().text;
}

bool operator<(const Value& a, const Value& b) {
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb;
  switch (ra) {
    case 0: return a.as_entity() < b.as_entity();
    case 1: return a.as_number() < b.as_number();
    case 2: return a.as_bool() < b.as_bool();
    default: return a.as_text() < b.as_text();
  }
}

std::optional<Number> parse_number(std::string_view s) {
  auto t = text::trim(s);
  if (t.empty()) return std::nullopt;
  auto slash = t.find('/');
  auto parse_int = [](std::string_view x, std::int64_t& out) {
    auto [p, ec] = std::from_chars(x.data(), x.data() + x.size(), out);
    return ec == std::errc{} && p == x.data() + x.size() && !x.empty();
  };
  if (slash != std::string::npos) {
    std::int64_t n = 0, d = 0;
    if (!parse_int(std::string_view(t).substr(0, slash), n) ||
        !parse_int(std::string_view(t).substr(slash + 1), d) || d == 0)
      return std::nullopt;
    return Number(n, d);
  }
  bool neg = t[0] == '-';
  std::string_view body(t);
  if (neg) body.remove_prefix(1);
  auto dot = body.find('.');
  std::string digits(body.substr(0, dot));
  std::string frac = dot == std::string_view::npos ? "" : std::string(body.substr(dot + 1));
  if (digits.empty() && frac.empty()) return std::nullopt;
  std::int64_t whole = 0, f = 0, scale = 1;
  if (!digits.empty() && !parse_int(digits, whole)) return std::nullopt;
  if (!frac.empty()) {
    if (frac.size() > 15 || !parse_int(frac, f)) return std::nullopt;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
  }
  Number r = Number(whole) + Number(f, scale);
  return neg ? -r : r;
}

Value parse_value(std::string_view s) {
  auto t = text::trim(s);
  auto bad = [&] { return Error("BadValue", "cannot parse value '" + t + "'"); };
  if (t.empty()) throw bad();
  auto colon = t.find(':');
  if (colon == std::string::npos) return Value::entity(t);
  auto tag = t.substr(0, colon);
  auto body = t.substr(colon + 1);
  if (tag == "int" || tag == "num") {
    auto n = parse_number(body);
    if (!n || (tag == "int" && n->denominator() != 1)) throw bad();
    return Value(*n);
  }
  if (tag == "bool") {
    if (body == "true") return Value(true);
    if (body == "false") return Value(false);
    throw bad();
  }
  if (tag == "str") return Value::text(body);
  return Value::entity(t);
}

}  // namespace qdmr
