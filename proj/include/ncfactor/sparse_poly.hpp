#pragma once

#include <map>
#include <optional>
#include <set>

#include "ncfactor/matrix.hpp"
#include "ncfactor/monomial.hpp"
#include "ncfactor/scalar.hpp"

namespace ncfactor {

// Element of the free ring F<x0,...,x_{n-1}>: finitely many words with
// nonzero coefficients, stored deglex-sorted. The term map never holds a
// zero coefficient, so equality is structural.
class SparsePoly {
 public:
  SparsePoly(uint32_t n, FieldSpec field) : n_(n), field_(field) {}

  static SparsePoly zero(uint32_t n, FieldSpec field) { return SparsePoly(n, field); }
  static SparsePoly constant(uint32_t n, FieldSpec field, const Scalar& c);
  static SparsePoly monomial(uint32_t n, FieldSpec field, const Monomial& m,
                             const Scalar& c);
  static SparsePoly variable(uint32_t n, FieldSpec field, VarIndex i);

  uint32_t var_count() const { return n_; }
  const FieldSpec& field() const { return field_; }
  const std::map<Monomial, Scalar, DeglexLess>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }

  // Degree of the zero polynomial is not a number; nullopt stands in for
  // "minus infinity" so arithmetic on it fails loudly.
  std::optional<int> degree() const;
  int degree_or_throw() const;

  Scalar coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Scalar& c);  // accumulates, keeps canonical form

  Matrix eval_on_matrices(const MatrixTuple& point) const;

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly operator-() const;
  SparsePoly scale(const Scalar& c) const;
  bool operator==(const SparsePoly& o) const;
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  // Sum over words w with mw / wm in the support of f, of f(mw)*w / f(wm)*w.
  SparsePoly left_partial(const Monomial& m) const;
  SparsePoly right_partial(const Monomial& m) const;

  std::set<VarIndex> var_set() const;
  bool depends_on(VarIndex v) const;
  SparsePoly substitute_var_zero(VarIndex v) const;

  SparsePoly homogeneous_part(int j) const;
  bool is_homogeneous() const;  // zero counts as homogeneous
  bool is_multilinear() const;

  // Among maximum-degree monomials, the lexicographically least. This is the
  // canonical leading monomial used for monic normalization throughout.
  Monomial max_degree_monomial_lex() const;  // ZeroPolynomial on 0
  Scalar leading_coefficient() const;
  SparsePoly monic() const;

  // Occurrence of x_i at word position j becomes variable j*n + i (over n*d
  // variables, d = degree); requires homogeneous input. unrename maps back.
  SparsePoly rename_positions() const;
  SparsePoly unrename_positions(uint32_t orig_n) const;

  SparsePoly with_var_count(uint32_t new_n) const;  // embed into a larger ring

  std::string to_string() const;

 private:
  void check_compatible(const SparsePoly& o) const;

  uint32_t n_;
  FieldSpec field_;
  std::map<Monomial, Scalar, DeglexLess> terms_;
};

}  // namespace ncfactor
