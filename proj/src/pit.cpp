#include "ncfactor/pit.hpp"

#include <algorithm>

#include "ncfactor/errors.hpp"

namespace ncfactor {

namespace {

std::vector<Scalar> row_times(const std::vector<Scalar>& v, const Matrix& m) {
  std::vector<Scalar> out(m.cols(), Scalar::zero(m.field()));
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    for (size_t j = 0; j < m.cols(); ++j) {
      const Scalar& e = m.at(k, j);
      if (!e.is_zero()) out[j] = out[j] + v[k] * e;
    }
  }
  return out;
}

std::vector<Scalar> times_col(const Matrix& m, const std::vector<Scalar>& v) {
  std::vector<Scalar> out(m.rows(), Scalar::zero(m.field()));
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    for (size_t i = 0; i < m.rows(); ++i) {
      const Scalar& e = m.at(i, k);
      if (!e.is_zero()) out[i] = out[i] + e * v[k];
    }
  }
  return out;
}

Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
           const FieldSpec& field) {
  Scalar s = Scalar::zero(field);
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s = s + a[i] * b[i];
  return s;
}

TaggedBasis next_layer(const TaggedBasis& cur, const AbpTransfer& t, bool forward) {
  TaggedBasis next;
  SpanBuilder sb(t.dim, t.field);
  for (size_t j = 0; j < cur.vectors.size(); ++j)
    for (uint32_t i = 0; i < t.n; ++i) {
      std::vector<Scalar> v = forward ? row_times(cur.vectors[j], t.step[i])
                                      : times_col(t.step[i], cur.vectors[j]);
      if (!sb.insert(v)) continue;
      next.monomials.push_back(forward ? cur.monomials[j].concat(Monomial::var(i))
                                       : Monomial::var(i).concat(cur.monomials[j]));
      next.vectors.push_back(std::move(v));
    }
  return next;
}

TaggedBasis seed_layer(const AbpTransfer& t, bool forward) {
  TaggedBasis b;
  b.monomials.push_back(Monomial::unit());
  b.vectors.push_back(forward ? t.start : t.close);
  return b;
}

}  // namespace

AbpTransfer make_abp_transfer(const Abp& a) {
  const auto& sizes = a.layer_sizes();
  size_t depth = a.depth();
  std::vector<size_t> offset(sizes.size());
  size_t dim = 0;
  for (size_t l = 0; l < sizes.size(); ++l) {
    offset[l] = dim;
    dim += sizes[l];
  }
  const FieldSpec& field = a.field();
  Matrix consts(dim, dim, field);
  std::vector<Matrix> lin(a.var_count(), Matrix(dim, dim, field));
  for (size_t l = 0; l < depth; ++l)
    for (auto& [src, dst, form] : a.edges(l)) {
      size_t r = offset[l] + src, c = offset[l + 1] + dst;
      if (!form.c0.is_zero()) consts.at(r, c) = consts.at(r, c) + form.c0;
      for (auto& [i, ci] : form.coeffs) lin[i].at(r, c) = lin[i].at(r, c) + ci;
    }
  // The constant-edge graph is level-acyclic, so its closure is the finite
  // sum I + C + C^2 + ... .
  Matrix closure = Matrix::identity(dim, field);
  Matrix power = consts;
  while (!power.is_zero()) {
    closure = closure + power;
    power = power * consts;
  }
  AbpTransfer t;
  t.dim = dim;
  t.field = field;
  t.n = a.var_count();
  t.depth = depth;
  for (auto& li : lin) t.step.push_back(closure * li);
  t.start.assign(dim, Scalar::zero(field));
  t.start[0] = Scalar::one(field);
  t.close.assign(dim, Scalar::zero(field));
  for (size_t i = 0; i < dim; ++i) t.close[i] = closure.at(i, dim - 1);
  return t;
}

TaggedBasis forward_basis(const AbpTransfer& t, size_t len) {
  TaggedBasis b = seed_layer(t, true);
  for (size_t q = 0; q < len; ++q) b = next_layer(b, t, true);
  return b;
}

TaggedBasis backward_basis(const AbpTransfer& t, size_t len) {
  TaggedBasis b = seed_layer(t, false);
  for (size_t q = 0; q < len; ++q) b = next_layer(b, t, false);
  return b;
}

PitVerdict pit_abp_deterministic(const Abp& a) {
  AbpTransfer t = make_abp_transfer(a);
  PitVerdict v;
  TaggedBasis layer = seed_layer(t, true);
  for (size_t q = 0; q <= t.depth; ++q) {
    for (size_t j = 0; j < layer.vectors.size(); ++j) {
      if (!dot(layer.vectors[j], t.close, t.field).is_zero()) {
        v.is_zero = false;
        v.witness_monomial = layer.monomials[j];
        return v;
      }
      v.basis_monomials.push_back(layer.monomials[j]);
    }
    if (layer.vectors.empty()) break;
    if (q < t.depth) layer = next_layer(layer, t, true);
  }
  v.is_zero = true;
  return v;
}

PitVerdict pit_randomized(const PolyRep& r, const PitParams& params) {
  const FieldSpec& field = rep_field(r);
  require(params.trials >= 1, Errc::InvalidArgument, "need at least one trial");
  if (field.is_prime_field() && !params.allow_small_field)
    require(field.characteristic() >= (uint64_t(1) << 16), Errc::FieldTooSmall,
            "field too small for reliable random evaluation; pass "
            "allow_small_field to override");
  int bound = rep_degree_bound(r);
  size_t t = std::max<size_t>(2 * size_t(std::max(bound, 0)), 1);
  std::optional<uint64_t> range;
  if (field.is_rationals()) range = params.rational_range;
  uint32_t n = rep_var_count(r);
  SeededRng root(params.seed);
  PitVerdict v;
  for (int k = 0; k < params.trials; ++k) {
    SeededRng rng = root.derive(uint64_t(k));
    MatrixTuple point = MatrixTuple::random(n, t, field, rng, range);
    Matrix value = eval_rep(r, point);
    v.trials_used = k + 1;
    if (!value.is_zero()) {
      v.is_zero = false;
      v.witness = std::move(point);
      return v;
    }
  }
  v.is_zero = true;
  return v;
}

bool rep_is_zero(const PolyRep& r, const PitParams& params) {
  if (auto* s = std::get_if<SparsePoly>(&r)) return s->term_count() == 0;
  if (auto* a = std::get_if<Abp>(&r)) return pit_abp_deterministic(*a).is_zero;
  return pit_randomized(r, params).is_zero;
}

}  // namespace ncfactor
