#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ncfactor/abp.hpp"
#include "ncfactor/matrix.hpp"
#include "ncfactor/sparse_poly.hpp"

namespace ncfactor {

// Partial-derivative matrix of a homogeneous f at the split d = d1 + d2:
// entry(m, m') = coefficient(f, m·m'). Only prefixes/suffixes occurring in
// the support are indexed; the omitted rows and columns are zero, so the
// rank is unaffected.
struct PDMatrix {
  int d1 = 0;
  int d2 = 0;
  std::vector<Monomial> row_index;  // degree-d1 prefixes, deglex sorted
  std::vector<Monomial> col_index;  // degree-d2 suffixes, deglex sorted
  Matrix entries;
};

PDMatrix build_pd_matrix(const SparsePoly& f, int d1);

// Least k such that f = g_1 h_1 + .. + g_k h_k with deg g_i = d1: the rank
// of the partial-derivative matrix.
size_t sop_rank(const SparsePoly& f, int d1);

struct SopDecomposition {
  size_t k = 0;
  // g_i homogeneous of degree d1, h_i of degree d2, sum reconstructs f.
  std::vector<std::pair<SparsePoly, SparsePoly>> pairs;
};

// Rank factorization through a k×k invertible minor K at rows R, cols C
// (first maximal independent set in deglex order): g_i reads off column C_i
// of the matrix, h_i the rows K^{-1}·A[R,:].
SopDecomposition sop_decompose(const SparsePoly& f, int d1);

// Same rank without expanding the ABP: forward and backward spanning bases
// at the cut are honest word vectors, so their dot-product grid is a
// submatrix of the full partial-derivative matrix that preserves rank.
size_t sop_rank_abp(const Abp& a, int d1);

// A (k+1)×(k+1) minor with nonzero determinant certifies rank > k. rows are
// degree-d1 monomials, cols degree-d2; any monomials are allowed (words
// outside the support just contribute zero entries).
bool check_rank_certificate(const SparsePoly& f, int d1,
                            const std::vector<Monomial>& rows,
                            const std::vector<Monomial>& cols);

// Exhaustive minor search over the occurring prefixes/suffixes; nullopt when
// every selection is singular (rank <= k).
std::optional<std::pair<std::vector<Monomial>, std::vector<Monomial>>>
find_rank_certificate(const SparsePoly& f, int d1, size_t k);

// Dense n×n×n array of scalars.
struct Tensor3 {
  uint32_t n = 0;
  FieldSpec field;
  std::vector<Scalar> entries;  // entries[(i*n + j)*n + k]

  static Tensor3 zeros(uint32_t n, FieldSpec field);
  Scalar& at(uint32_t i, uint32_t j, uint32_t k) {
    return entries[(size_t(i) * n + j) * n + k];
  }
  const Scalar& at(uint32_t i, uint32_t j, uint32_t k) const {
    return entries[(size_t(i) * n + j) * n + k];
  }
};

// f = sum A_{ijk} x_i y_j z_k over 3n variables (x block, then y, then z):
// tensor rank becomes sum-of-products rank questions on a cubic.
SparsePoly encode_tensor(const Tensor3& t);

// Exhaustive search for a decomposition into at most k rank-one tensors.
// Complete over F_2 (all vectors enumerated); over the rationals the factor
// vectors range over {-1,0,1}^n only, so a `false` is not a proof there.
// Exponential by design; anything beyond desk scale throws.
bool tensor_rank_leq(const Tensor3& t, size_t k);

}  // namespace ncfactor
