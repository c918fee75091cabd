#pragma once

#include <map>

#include "ncfactor/matrix.hpp"
#include "ncfactor/sparse_poly.hpp"

namespace ncfactor {

// Edge label c0 + sum_i c_i * x_i.
struct AffineForm {
  Scalar c0;
  std::map<VarIndex, Scalar> coeffs;  // nonzero entries only

  static AffineForm zero(const FieldSpec& f) { return {Scalar::zero(f), {}}; }
  static AffineForm constant(const Scalar& c) { return {c, {}}; }
  static AffineForm var(const FieldSpec& f, VarIndex i) {
    return {Scalar::zero(f), {{i, Scalar::one(f)}}};
  }
  void add_coeff(VarIndex i, const Scalar& c);
  bool is_zero() const;
  Matrix eval(const MatrixTuple& point) const;  // c0*I + sum c_i*M_i
};

// Layered algebraic branching program: levels 0..depth, single source at
// level 0 and single sink at level depth, edges between consecutive levels
// carry affine forms. Computes the sum over source-sink paths of ordered
// label products; the degree is bounded by the depth.
class Abp {
 public:
  Abp(uint32_t n, FieldSpec field, std::vector<uint32_t> layer_sizes);

  uint32_t var_count() const { return n_; }
  const FieldSpec& field() const { return field_; }
  const std::vector<uint32_t>& layer_sizes() const { return sizes_; }
  size_t depth() const { return sizes_.size() - 1; }
  int degree_bound() const { return int(depth()); }
  uint32_t width() const;

  void add_edge(size_t layer, uint32_t src, uint32_t dst, AffineForm form);
  // Edges of the layer between levels `layer` and `layer+1`.
  const std::vector<std::tuple<uint32_t, uint32_t, AffineForm>>& edges(size_t layer) const {
    return edges_[layer];
  }

  Matrix eval_on_matrices(const MatrixTuple& point) const;
  SparsePoly expand_to_sparse(size_t max_terms) const;

  Abp homogeneous_part(int j) const;
  Abp left_partial(const Monomial& m) const;
  Abp right_partial(const Monomial& m) const;
  Abp substitute_var_zero(VarIndex v) const;
  Abp scale(const Scalar& c) const;
  Abp with_var_count(uint32_t new_n) const;

  // Homogeneous input of degree exactly d assumed: occurrence at word
  // position j becomes variable j*n + i.
  Abp rename_positions(int d) const;
  Abp unrename_positions(uint32_t orig_n) const;

  static Abp add(const Abp& a, const Abp& b);
  static Abp mul(const Abp& a, const Abp& b);
  static Abp from_sparse(const SparsePoly& p);

 private:
  Abp pad_to_depth(size_t depth) const;

  uint32_t n_;
  FieldSpec field_;
  std::vector<uint32_t> sizes_;
  std::vector<std::vector<std::tuple<uint32_t, uint32_t, AffineForm>>> edges_;
};

}  // namespace ncfactor
