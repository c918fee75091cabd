#include "ncfactor/parse.hpp"

#include <cctype>

#include "ncfactor/errors.hpp"

namespace ncfactor {

namespace {

struct Parser {
  const std::string& s;
  uint32_t n;
  FieldSpec field;
  size_t pos = 0;

  [[noreturn]] void err(const std::string& msg) const {
    fail(Errc::SyntaxError, msg + " at position " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  SparsePoly expr() {
    bool neg = eat('-');
    SparsePoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  SparsePoly term() {
    SparsePoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  SparsePoly factor() {
    skip_ws();
    if (pos >= s.size()) err("expected a factor");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      SparsePoly inner = expr();
      if (!eat(')')) err("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return scalar_factor();
    if (std::isalpha(static_cast<unsigned char>(c))) return var_factor();
    err(std::string("unexpected character '") + c + "'");
  }

  SparsePoly scalar_factor() {
    std::string num = digits();
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      std::string den = digits();
      if (den.empty()) err("expected digits after '/'");
      num += "/" + den;
    }
    return SparsePoly::constant(n, field, Scalar::from_string(field, num));
  }

  std::string digits() {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  }

  SparsePoly var_factor() {
    size_t start = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string name = s.substr(start, pos - start);
    uint32_t idx = n;  // sentinel: out of range
    if (name.size() == 1 && n <= 4) {
      switch (name[0]) {
        case 'x': idx = 0; break;
        case 'y': idx = 1; break;
        case 'z': idx = 2; break;
        case 'w': idx = 3; break;
        default: break;
      }
    }
    if (idx == n && name.size() >= 2 && name.size() <= 10 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos &&
        (name[1] != '0' || name.size() == 2)) {
      unsigned long v = std::stoul(name.substr(1));
      if (v < n) idx = uint32_t(v);
    }
    require(idx < n, Errc::UnknownVariable,
            "'" + name + "' does not name one of " + std::to_string(n) + " variables");
    return SparsePoly::variable(n, field, idx);
  }
};

}  // namespace

SparsePoly parse_poly(const std::string& text, uint32_t n, FieldSpec field) {
  Parser p{text, n, field};
  SparsePoly out = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.err("unexpected trailing input");
  return out;
}

}  // namespace ncfactor
