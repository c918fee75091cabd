#include "ncfactor/matrix.hpp"

namespace ncfactor {

Matrix::Matrix(size_t rows, size_t cols, FieldSpec field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(size_t n, FieldSpec field) {
  Matrix m(n, n, field);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::random(size_t rows, size_t cols, FieldSpec field, SeededRng& rng,
                      std::optional<uint64_t> range) {
  Matrix m(rows, cols, field);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = sample_uniform(field, rng, range);
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, Errc::DimensionMismatch, "add");
  Matrix r = *this;
  for (size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) r.data_[k] += o.data_[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, Errc::DimensionMismatch, "sub");
  Matrix r = *this;
  for (size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) r.data_[k] -= o.data_[k];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require(cols_ == o.rows_, Errc::DimensionMismatch, "mul");
  Matrix r(rows_, o.cols_, field_);
  if (field_.is_prime_field() && field_ == o.field_) {
    // Flat residue buffers keep the hot loop free of Scalar construction.
    uint64_t p = field_.characteristic();
    std::vector<uint64_t> a(data_.size()), b(o.data_.size()), c(rows_ * o.cols_, 0);
    for (size_t k = 0; k < data_.size(); ++k) a[k] = data_[k].residue();
    for (size_t k = 0; k < o.data_.size(); ++k) b[k] = o.data_[k].residue();
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t k = 0; k < cols_; ++k) {
        uint64_t av = a[i * cols_ + k];
        if (av == 0) continue;
        const uint64_t* brow = &b[k * o.cols_];
        uint64_t* crow = &c[i * o.cols_];
        for (size_t j = 0; j < o.cols_; ++j) {
          if (brow[j] == 0) continue;
          uint64_t m = uint64_t((unsigned __int128)av * brow[j] % p);
          uint64_t s = crow[j] + m;
          if (s >= p || s < m) s -= p;
          crow[j] = s;
        }
      }
    }
    for (size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0) r.data_[k] = Scalar::from_residue(field_, c[k]);
    return r;
  }
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      const Scalar* brow = &o.data_[k * o.cols_];
      Scalar* rrow = &r.data_[i * o.cols_];
      for (size_t j = 0; j < o.cols_; ++j) {
        if (brow[j].is_zero()) continue;
        rrow[j] += a * brow[j];
      }
    }
  }
  return r;
}

Matrix Matrix::scale(const Scalar& c) const {
  Matrix r = *this;
  for (auto& x : r.data_)
    if (!x.is_zero()) x *= c;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t k = 0; k < data_.size(); ++k)
    if (data_[k] != o.data_[k]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::block(size_t i0, size_t j0, size_t h, size_t w) const {
  require(i0 + h <= rows_ && j0 + w <= cols_, Errc::DimensionMismatch, "block");
  Matrix b(h, w, field_);
  for (size_t i = 0; i < h; ++i)
    for (size_t j = 0; j < w; ++j) b.at(i, j) = at(i0 + i, j0 + j);
  return b;
}

void Matrix::set_block(size_t i0, size_t j0, const Matrix& b) {
  require(i0 + b.rows() <= rows_ && j0 + b.cols() <= cols_, Errc::DimensionMismatch,
          "set_block");
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) at(i0 + i, j0 + j) = b.at(i, j);
}

size_t MatrixTuple::dim() const {
  require(!mats.empty(), Errc::DimensionMismatch, "empty tuple");
  size_t t = mats[0].rows();
  for (const auto& m : mats)
    require(m.rows() == t && m.cols() == t, Errc::DimensionMismatch,
            "tuple matrices must be square of equal dimension");
  return t;
}

FieldSpec MatrixTuple::field() const {
  require(!mats.empty(), Errc::DimensionMismatch, "empty tuple");
  return mats[0].field();
}

MatrixTuple MatrixTuple::random(uint32_t n, size_t t, FieldSpec field, SeededRng& rng,
                                std::optional<uint64_t> range) {
  MatrixTuple tup;
  for (uint32_t i = 0; i < n; ++i) tup.mats.push_back(Matrix::random(t, t, field, rng, range));
  return tup;
}

MatrixTuple MatrixTuple::zeros(uint32_t n, size_t t, FieldSpec field) {
  MatrixTuple tup;
  for (uint32_t i = 0; i < n; ++i) tup.mats.push_back(Matrix(t, t, field));
  return tup;
}

SpanBuilder::SpanBuilder(size_t width, FieldSpec field) : width_(width), field_(field) {}

bool SpanBuilder::insert(std::vector<Scalar> v) {
  require(v.size() == width_, Errc::DimensionMismatch, "span vector width");
  // Rows are kept fully reduced: each pivot column is nonzero in its own row
  // only, so one elimination pass per stored row suffices.
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar factor = v[lead_[r]];
    if (factor.is_zero()) continue;
    for (size_t j = 0; j < width_; ++j)
      if (!rows_[r][j].is_zero()) v[j] -= factor * rows_[r][j];
  }
  size_t lead = width_;
  for (size_t j = 0; j < width_; ++j)
    if (!v[j].is_zero()) {
      lead = j;
      break;
    }
  if (lead == width_) return false;
  Scalar inv = v[lead].inverse();
  for (auto& x : v)
    if (!x.is_zero()) x *= inv;
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar factor = rows_[r][lead];
    if (factor.is_zero()) continue;
    for (size_t j = 0; j < width_; ++j)
      if (!v[j].is_zero()) rows_[r][j] -= factor * v[j];
  }
  rows_.push_back(std::move(v));
  lead_.push_back(lead);
  return true;
}

namespace {

// Row echelon over the field; visits rows in order so the kept set is the
// index-first maximal independent one.
std::vector<size_t> greedy_rows(const Matrix& a) {
  SpanBuilder span(a.cols(), a.field());
  std::vector<size_t> kept;
  for (size_t i = 0; i < a.rows(); ++i) {
    std::vector<Scalar> v;
    v.reserve(a.cols());
    for (size_t j = 0; j < a.cols(); ++j) v.push_back(a.at(i, j));
    if (span.insert(std::move(v))) kept.push_back(i);
  }
  return kept;
}

}  // namespace

RankProfile rank_profile(const Matrix& a) {
  RankProfile p;
  p.rows = greedy_rows(a);
  // Columns: greedy within the kept rows, via the transpose trick.
  Matrix sub(a.cols(), p.rows.size(), a.field());
  for (size_t j = 0; j < a.cols(); ++j)
    for (size_t i = 0; i < p.rows.size(); ++i) sub.at(j, i) = a.at(p.rows[i], j);
  p.cols = greedy_rows(sub);
  p.rank = p.rows.size();
  require(p.cols.size() == p.rank, Errc::DimensionMismatch, "rank profile inconsistency");
  return p;
}

size_t rank(const Matrix& a) { return greedy_rows(a).size(); }

Scalar determinant(Matrix a) {
  require(a.rows() == a.cols(), Errc::DimensionMismatch, "determinant of non-square");
  size_t n = a.rows();
  Scalar det = Scalar::one(a.field());
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a.at(piv, col).is_zero()) ++piv;
    if (piv == n) return Scalar::zero(a.field());
    if (piv != col) {
      for (size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      det = -det;
    }
    det *= a.at(col, col);
    Scalar inv = a.at(col, col).inverse();
    for (size_t i = col + 1; i < n; ++i) {
      if (a.at(i, col).is_zero()) continue;
      Scalar f = a.at(i, col) * inv;
      for (size_t j = col; j < n; ++j)
        if (!a.at(col, j).is_zero()) a.at(i, j) -= f * a.at(col, j);
    }
  }
  return det;
}

Matrix inverse(const Matrix& a) {
  require(a.rows() == a.cols(), Errc::DimensionMismatch, "inverse of non-square");
  size_t n = a.rows();
  Matrix work = a;
  Matrix inv = Matrix::identity(n, a.field());
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && work.at(piv, col).is_zero()) ++piv;
    require(piv < n, Errc::DivisionByZero, "singular matrix");
    if (piv != col)
      for (size_t j = 0; j < n; ++j) {
        std::swap(work.at(piv, j), work.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    Scalar s = work.at(col, col).inverse();
    for (size_t j = 0; j < n; ++j) {
      work.at(col, j) *= s;
      inv.at(col, j) *= s;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || work.at(i, col).is_zero()) continue;
      Scalar f = work.at(i, col);
      for (size_t j = 0; j < n; ++j) {
        work.at(i, j) -= f * work.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

}  // namespace ncfactor
