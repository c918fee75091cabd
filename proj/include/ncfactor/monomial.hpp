#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ncfactor {

using VarIndex = uint32_t;

// A word over variable indices; the empty word is the unit monomial.
// Multiplication is concatenation and does not commute.
struct Monomial {
  std::vector<VarIndex> word;

  Monomial() = default;
  explicit Monomial(std::vector<VarIndex> w) : word(std::move(w)) {}
  Monomial(std::initializer_list<VarIndex> w) : word(w) {}

  static Monomial unit() { return Monomial(); }
  static Monomial var(VarIndex i) { return Monomial({i}); }

  size_t degree() const { return word.size(); }
  bool is_unit() const { return word.empty(); }

  Monomial concat(const Monomial& o) const;
  Monomial prefix(size_t len) const;        // first len symbols
  Monomial suffix_from(size_t pos) const;   // symbols [pos, end)
  Monomial subword(size_t pos, size_t len) const;
  bool has_prefix(const Monomial& p) const;
  bool has_suffix(const Monomial& s) const;

  bool operator==(const Monomial&) const = default;

  std::string to_string() const;  // "x0*x1*x0", unit prints "1"
};

// Degree first, then lexicographic on the word.
std::strong_ordering deglex_compare(const Monomial& a, const Monomial& b);

struct DeglexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return deglex_compare(a, b) < 0;
  }
};

}  // namespace ncfactor
