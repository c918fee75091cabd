#include "ncfactor/rep.hpp"

#include <algorithm>

#include "ncfactor/errors.hpp"

namespace ncfactor {

RepKind rep_kind(const PolyRep& r) {
  if (std::holds_alternative<SparsePoly>(r)) return RepKind::Sparse;
  if (std::holds_alternative<Abp>(r)) return RepKind::Abp;
  return RepKind::Circuit;
}

const char* rep_kind_name(RepKind k) {
  switch (k) {
    case RepKind::Sparse: return "sparse";
    case RepKind::Abp: return "abp";
    case RepKind::Circuit: return "circuit";
  }
  return "?";
}

const FieldSpec& rep_field(const PolyRep& r) {
  return std::visit([](const auto& p) -> const FieldSpec& { return p.field(); }, r);
}

uint32_t rep_var_count(const PolyRep& r) {
  return std::visit([](const auto& p) { return p.var_count(); }, r);
}

int rep_degree_bound(const PolyRep& r) {
  if (auto* s = std::get_if<SparsePoly>(&r)) return std::max(s->degree().value_or(0), 0);
  if (auto* a = std::get_if<Abp>(&r)) return a->degree_bound();
  return std::get<Circuit>(r).degree_bound();
}

Matrix eval_rep(const PolyRep& r, const MatrixTuple& point) {
  return std::visit([&](const auto& p) { return p.eval_on_matrices(point); }, r);
}

SparsePoly expand_rep(const PolyRep& r, size_t max_terms) {
  if (auto* s = std::get_if<SparsePoly>(&r)) {
    require(s->term_count() <= max_terms, Errc::TermBudgetExceeded,
            "polynomial exceeds the term budget");
    return *s;
  }
  if (auto* a = std::get_if<Abp>(&r)) return a->expand_to_sparse(max_terms);
  return std::get<Circuit>(r).expand_to_sparse(max_terms);
}

Scalar rep_coefficient(const PolyRep& r, const Monomial& m) {
  if (auto* s = std::get_if<SparsePoly>(&r)) return s->coefficient(m);
  if (auto* a = std::get_if<Abp>(&r)) {
    Abp d = a->left_partial(m);
    MatrixTuple zeros = MatrixTuple::zeros(d.var_count(), 1, d.field());
    return d.eval_on_matrices(zeros).at(0, 0);
  }
  return std::get<Circuit>(r).left_partial(m).constant_term();
}

PolyRep rep_homogeneous_part(const PolyRep& r, int j) {
  if (auto* s = std::get_if<SparsePoly>(&r)) return s->homogeneous_part(j);
  if (auto* a = std::get_if<Abp>(&r)) return a->homogeneous_part(j);
  return std::get<Circuit>(r).homogeneous_part(j);
}

PolyRep rep_left_partial(const PolyRep& r, const Monomial& m) {
  return std::visit([&](const auto& p) -> PolyRep { return p.left_partial(m); }, r);
}

PolyRep rep_right_partial(const PolyRep& r, const Monomial& m) {
  return std::visit([&](const auto& p) -> PolyRep { return p.right_partial(m); }, r);
}

PolyRep rep_substitute_var_zero(const PolyRep& r, VarIndex v) {
  return std::visit([&](const auto& p) -> PolyRep { return p.substitute_var_zero(v); }, r);
}

PolyRep rep_scale(const PolyRep& r, const Scalar& c) {
  return std::visit([&](const auto& p) -> PolyRep { return p.scale(c); }, r);
}

PolyRep rep_with_var_count(const PolyRep& r, uint32_t new_n) {
  return std::visit([&](const auto& p) -> PolyRep { return p.with_var_count(new_n); }, r);
}

PolyRep rep_rename_positions(const PolyRep& r, int d) {
  if (auto* s = std::get_if<SparsePoly>(&r)) {
    require(s->degree() == std::optional<int>(d), Errc::BadDegrees,
            "renaming degree does not match the polynomial");
    return s->rename_positions();
  }
  if (auto* a = std::get_if<Abp>(&r)) return a->rename_positions(d);
  return std::get<Circuit>(r).rename_positions(d);
}

PolyRep rep_unrename_positions(const PolyRep& r, uint32_t orig_n) {
  return std::visit([&](const auto& p) -> PolyRep { return p.unrename_positions(orig_n); }, r);
}

PolyRep rep_add(const PolyRep& a, const PolyRep& b, const Scalar& ca,
                const Scalar& cb) {
  require(rep_kind(a) == rep_kind(b), Errc::InvalidArgument,
          "mixing polynomial encodings");
  if (auto* s = std::get_if<SparsePoly>(&a))
    return s->scale(ca) + std::get<SparsePoly>(b).scale(cb);
  if (auto* p = std::get_if<Abp>(&a))
    return Abp::add(p->scale(ca), std::get<Abp>(b).scale(cb));
  return Circuit::add(std::get<Circuit>(a), std::get<Circuit>(b), ca, cb);
}

PolyRep rep_mul(const PolyRep& a, const PolyRep& b) {
  require(rep_kind(a) == rep_kind(b), Errc::InvalidArgument,
          "mixing polynomial encodings");
  if (auto* s = std::get_if<SparsePoly>(&a)) return *s * std::get<SparsePoly>(b);
  if (auto* p = std::get_if<Abp>(&a)) return Abp::mul(*p, std::get<Abp>(b));
  return Circuit::mul(std::get<Circuit>(a), std::get<Circuit>(b));
}

}  // namespace ncfactor
