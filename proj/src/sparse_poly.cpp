#include "ncfactor/sparse_poly.hpp"

#include <algorithm>

namespace ncfactor {

SparsePoly SparsePoly::constant(uint32_t n, FieldSpec field, const Scalar& c) {
  return monomial(n, field, Monomial::unit(), c);
}

SparsePoly SparsePoly::monomial(uint32_t n, FieldSpec field, const Monomial& m,
                                const Scalar& c) {
  SparsePoly p(n, field);
  p.add_term(m, c);
  return p;
}

SparsePoly SparsePoly::variable(uint32_t n, FieldSpec field, VarIndex i) {
  require(i < n, Errc::VarCountMismatch, "variable index out of range");
  return monomial(n, field, Monomial::var(i), Scalar::one(field));
}

void SparsePoly::check_compatible(const SparsePoly& o) const {
  require(field_ == o.field_, Errc::FieldMismatch,
          field_.to_string() + " vs " + o.field_.to_string());
  require(n_ == o.n_, Errc::VarCountMismatch,
          std::to_string(n_) + " vs " + std::to_string(o.n_) + " variables");
}

std::optional<int> SparsePoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return int(terms_.rbegin()->first.degree());
}

int SparsePoly::degree_or_throw() const {
  auto d = degree();
  require(d.has_value(), Errc::ZeroPolynomial, "degree of the zero polynomial");
  return *d;
}

Scalar SparsePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void SparsePoly::add_term(const Monomial& m, const Scalar& c) {
  for (VarIndex v : m.word)
    require(v < n_, Errc::VarCountMismatch, "monomial uses variable out of range");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Matrix SparsePoly::eval_on_matrices(const MatrixTuple& point) const {
  require(point.mats.size() == n_, Errc::VarCountMismatch,
          "evaluation point has the wrong number of matrices");
  require(point.field() == field_, Errc::FieldMismatch,
          "evaluation point over a different field");
  size_t t = point.dim();
  Matrix acc(t, t, field_);
  for (const auto& [m, c] : terms_) {
    Matrix prod = Matrix::identity(t, field_).scale(c);
    for (VarIndex v : m.word) prod = prod * point.mats[v];
    acc = acc + prod;
  }
  return acc;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  check_compatible(o);
  SparsePoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r(n_, field_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + (-o); }

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  check_compatible(o);
  SparsePoly r(n_, field_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma.concat(mb), ca * cb);
  return r;
}

SparsePoly SparsePoly::scale(const Scalar& c) const {
  require(c.field() == field_, Errc::FieldMismatch, "scale by foreign scalar");
  SparsePoly r(n_, field_);
  if (c.is_zero()) return r;
  for (const auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
  return r;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
  check_compatible(o);
  return terms_ == o.terms_;
}

SparsePoly SparsePoly::left_partial(const Monomial& m) const {
  SparsePoly r(n_, field_);
  for (const auto& [w, c] : terms_)
    if (w.has_prefix(m)) r.terms_.emplace(w.suffix_from(m.degree()), c);
  return r;
}

SparsePoly SparsePoly::right_partial(const Monomial& m) const {
  SparsePoly r(n_, field_);
  for (const auto& [w, c] : terms_)
    if (w.has_suffix(m)) r.add_term(w.prefix(w.degree() - m.degree()), c);
  return r;
}

std::set<VarIndex> SparsePoly::var_set() const {
  std::set<VarIndex> s;
  for (const auto& [m, c] : terms_) s.insert(m.word.begin(), m.word.end());
  return s;
}

bool SparsePoly::depends_on(VarIndex v) const {
  for (const auto& [m, c] : terms_)
    if (std::find(m.word.begin(), m.word.end(), v) != m.word.end()) return true;
  return false;
}

SparsePoly SparsePoly::substitute_var_zero(VarIndex v) const {
  SparsePoly r(n_, field_);
  for (const auto& [m, c] : terms_)
    if (std::find(m.word.begin(), m.word.end(), v) == m.word.end())
      r.terms_.emplace(m, c);
  return r;
}

SparsePoly SparsePoly::homogeneous_part(int j) const {
  require(j >= 0, Errc::BadDegrees, "negative degree");
  SparsePoly r(n_, field_);
  for (const auto& [m, c] : terms_)
    if (int(m.degree()) == j) r.terms_.emplace(m, c);
  return r;
}

bool SparsePoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  size_t d = terms_.begin()->first.degree();
  return terms_.rbegin()->first.degree() == d;
}

bool SparsePoly::is_multilinear() const {
  for (const auto& [m, c] : terms_) {
    uint64_t seen = 0;
    for (VarIndex v : m.word) {
      uint64_t bit = v < 64 ? (uint64_t(1) << v) : 0;
      if (v < 64) {
        if (seen & bit) return false;
        seen |= bit;
      } else {
        if (std::count(m.word.begin(), m.word.end(), v) > 1) return false;
      }
    }
  }
  return true;
}

Monomial SparsePoly::max_degree_monomial_lex() const {
  require(!terms_.empty(), Errc::ZeroPolynomial, "no monomials in the zero polynomial");
  size_t d = terms_.rbegin()->first.degree();
  // Terms are deglex-sorted, so the first degree-d entry is the lex-least.
  Monomial floor(std::vector<VarIndex>(d, 0));
  return terms_.lower_bound(floor)->first;
}

Scalar SparsePoly::leading_coefficient() const {
  return coefficient(max_degree_monomial_lex());
}

SparsePoly SparsePoly::monic() const { return scale(leading_coefficient().inverse()); }

SparsePoly SparsePoly::rename_positions() const {
  require(is_homogeneous(), Errc::NotHomogeneous, "position renaming needs homogeneous input");
  if (is_zero()) return *this;
  size_t d = terms_.begin()->first.degree();
  SparsePoly r(uint32_t(n_ * d), field_);
  for (const auto& [m, c] : terms_) {
    Monomial w = m;
    for (size_t j = 0; j < w.word.size(); ++j) w.word[j] = VarIndex(j * n_ + w.word[j]);
    r.terms_.emplace(std::move(w), c);
  }
  return r;
}

SparsePoly SparsePoly::unrename_positions(uint32_t orig_n) const {
  SparsePoly r(orig_n, field_);
  for (const auto& [m, c] : terms_) {
    Monomial w = m;
    for (auto& v : w.word) v %= orig_n;
    r.add_term(w, c);
  }
  return r;
}

SparsePoly SparsePoly::with_var_count(uint32_t new_n) const {
  require(new_n >= n_, Errc::VarCountMismatch, "cannot shrink variable range");
  SparsePoly r(new_n, field_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c);
  return r;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    // negative rationals print through the subtraction sign so the text stays
    // inside the expression grammar ("x - 3/2*y", leading "-x")
    bool neg = field_.is_rationals() && sgn(c.rational_value()) < 0;
    Scalar mag = neg ? -c : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (m.is_unit())
      out += mag.to_string();
    else if (mag.is_one())
      out += m.to_string();
    else
      out += mag.to_string() + "*" + m.to_string();
  }
  return out;
}

}  // namespace ncfactor
