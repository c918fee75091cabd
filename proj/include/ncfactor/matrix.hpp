#pragma once

#include <optional>
#include <vector>

#include "ncfactor/scalar.hpp"

namespace ncfactor {

// Dense matrix over an exact field. Multiplication skips zero entries on
// both sides, so products of band-sparse operands (the shift-matrix
// constructions) stay cheap without a separate sparse type.
class Matrix {
 public:
  Matrix(size_t rows, size_t cols, FieldSpec field);

  static Matrix identity(size_t n, FieldSpec field);
  static Matrix random(size_t rows, size_t cols, FieldSpec field, SeededRng& rng,
                       std::optional<uint64_t> range = std::nullopt);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  Scalar& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scale(const Scalar& c) const;
  bool operator==(const Matrix& o) const;
  bool is_zero() const;

  Matrix block(size_t i0, size_t j0, size_t h, size_t w) const;
  void set_block(size_t i0, size_t j0, const Matrix& b);

 private:
  size_t rows_, cols_;
  FieldSpec field_;
  std::vector<Scalar> data_;
};

// n square matrices of equal dimension, one per variable.
struct MatrixTuple {
  std::vector<Matrix> mats;

  size_t dim() const;
  FieldSpec field() const;
  static MatrixTuple random(uint32_t n, size_t t, FieldSpec field, SeededRng& rng,
                            std::optional<uint64_t> range = std::nullopt);
  static MatrixTuple zeros(uint32_t n, size_t t, FieldSpec field);
};

struct RankProfile {
  size_t rank = 0;
  std::vector<size_t> rows;  // greedy independent rows, in scan order
  std::vector<size_t> cols;  // greedy independent columns within those rows
};

// Greedy in index order: a row/column is kept iff it is independent of the
// kept ones before it. With deglex-sorted indices this yields the
// deglex-first maximal independent set.
RankProfile rank_profile(const Matrix& a);
size_t rank(const Matrix& a);
Scalar determinant(Matrix a);
Matrix inverse(const Matrix& a);  // square, nonsingular

// Rank of the stacked matrix [basis; v] minus rank of basis, incrementally:
// maintains a row-echelon basis; returns true (and absorbs v) if v enlarges
// the span.
class SpanBuilder {
 public:
  explicit SpanBuilder(size_t width, FieldSpec field);
  bool insert(std::vector<Scalar> v);  // true if independent
  size_t rank() const { return rows_.size(); }

 private:
  size_t width_;
  FieldSpec field_;
  std::vector<std::vector<Scalar>> rows_;  // echelon rows
  std::vector<size_t> lead_;               // pivot column per row
};

}  // namespace ncfactor
