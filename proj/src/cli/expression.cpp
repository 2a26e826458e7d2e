#include "fuzcal/expression.hpp"

#include <cctype>
#include <charconv>

#include "fuzcal/continuum.hpp"

namespace fuzcal {

ParseError::ParseError(const std::string &message, std::size_t column)
    : ConfigError("parse error at column " + std::to_string(column) + ": " + message),
      column_(column) {}

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    skip();
    if (at_end()) fail("empty expression");
    Polynomial p = expr();
    skip();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, pos_ + 1); }

  bool at_end() const { return pos_ >= text_.size(); }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    while (eat('*')) acc = acc * power();
    return acc;
  }

  Polynomial power() {
    Polynomial base = unary();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      int e = 0;
      const auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), e);
      if (res.ec != std::errc() || e < 0) {
        pos_ = start;
        fail("expected a non-negative integer exponent");
      }
      pos_ = res.ptr - text_.data();
      return base.pow(e);
    }
    return base;
  }

  Polynomial unary() {
    if (eat('-')) return Complex(-1.0) * unary();
    if (eat('+')) return unary();
    return primary();
  }

  Polynomial primary() {
    skip();
    if (at_end()) fail("unexpected end of expression");
    if (eat('(')) {
      Polynomial inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (c == 'x') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] >= '1' && text_[pos_ + 1] <= '3') {
        const int axis = text_[pos_ + 1] - '1';
        pos_ += 2;
        return Polynomial::coordinate(axis);
      }
      fail("expected x1, x2 or x3");
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
      if (res.ec != std::errc()) fail("malformed number");
      pos_ = res.ptr - text_.data();
      return Polynomial::constant(v);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return Parser(text).parse(); }

SphereFunction parse_sphere_function(std::string_view text) {
  const std::string_view t = trim(text);
  const std::size_t offset = t.data() - text.data();
  constexpr std::string_view kProfile = "sigma-profile:";
  constexpr std::string_view kVortex = "vortex:";
  if (t == "delta-phi") return DeltaPhi{};
  if (t.starts_with(kProfile)) {
    const std::string name(t.substr(kProfile.size()));
    FieldConfig cfg;
    try {
      cfg = field_preset(name);
    } catch (const ConfigError &) {
      throw ParseError("unknown profile preset '" + name + "'", offset + kProfile.size() + 1);
    }
    return SigmaProfile{name, cfg.q, cfg.dq};
  }
  if (t.starts_with(kVortex)) {
    const std::string_view num = t.substr(kVortex.size());
    int k = 0;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), k);
    if (res.ec != std::errc() || res.ptr != num.data() + num.size()) {
      throw ParseError("expected an integer vortex power", offset + kVortex.size() + 1);
    }
    return VortexPower{k};
  }
  return parse_polynomial(text);
}

}  // namespace fuzcal
