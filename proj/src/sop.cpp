#include "ncfactor/sop.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "ncfactor/errors.hpp"
#include "ncfactor/pit.hpp"

namespace ncfactor {

namespace {

std::pair<int, int> split_degrees(const SparsePoly& f, int d1) {
  require(!f.is_zero(), Errc::ZeroPolynomial, "no split of the zero polynomial");
  require(f.is_homogeneous(), Errc::NotHomogeneous,
          "partial-derivative matrix needs a homogeneous input");
  int d = f.degree_or_throw();
  require(0 < d1 && d1 < d, Errc::BadSplit,
          "split degree must lie strictly between 0 and deg f");
  return {d1, d - d1};
}

Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
           const FieldSpec& field) {
  Scalar acc = Scalar::zero(field);
  for (size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

// next (k-subset of [0, limit)) in lexicographic order; false after the last
bool next_combination(std::vector<size_t>& v, size_t limit) {
  size_t m = v.size();
  for (size_t i = m; i-- > 0;) {
    if (v[i] != limit - m + i) {
      ++v[i];
      for (size_t j = i + 1; j < m; ++j) v[j] = v[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

PDMatrix build_pd_matrix(const SparsePoly& f, int d1) {
  auto [dl, dr] = split_degrees(f, d1);
  std::set<Monomial, DeglexLess> pre, suf;
  for (const auto& [m, c] : f.terms()) {
    pre.insert(m.prefix(size_t(dl)));
    suf.insert(m.suffix_from(size_t(dl)));
  }
  PDMatrix out{dl, dr, std::vector<Monomial>(pre.begin(), pre.end()),
               std::vector<Monomial>(suf.begin(), suf.end()),
               Matrix(pre.size(), suf.size(), f.field())};
  for (size_t i = 0; i < out.row_index.size(); ++i)
    for (size_t j = 0; j < out.col_index.size(); ++j)
      out.entries.at(i, j) = f.coefficient(out.row_index[i].concat(out.col_index[j]));
  return out;
}

size_t sop_rank(const SparsePoly& f, int d1) {
  return rank(build_pd_matrix(f, d1).entries);
}

SopDecomposition sop_decompose(const SparsePoly& f, int d1) {
  PDMatrix a = build_pd_matrix(f, d1);
  RankProfile rp = rank_profile(a.entries);
  size_t k = rp.rank;
  Matrix kmat(k, k, f.field());
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      kmat.at(i, j) = a.entries.at(rp.rows[i], rp.cols[j]);
  Matrix sel(k, a.col_index.size(), f.field());
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < a.col_index.size(); ++j)
      sel.at(i, j) = a.entries.at(rp.rows[i], j);
  // A = A[:,C] * K^{-1} * A[R,:] whenever K is an invertible rank-size minor
  Matrix v = inverse(kmat) * sel;
  SopDecomposition out{k, {}};
  for (size_t i = 0; i < k; ++i) {
    SparsePoly g(f.var_count(), f.field());
    for (size_t r = 0; r < a.row_index.size(); ++r)
      g.add_term(a.row_index[r], a.entries.at(r, rp.cols[i]));
    SparsePoly h(f.var_count(), f.field());
    for (size_t c = 0; c < a.col_index.size(); ++c)
      h.add_term(a.col_index[c], v.at(i, c));
    out.pairs.emplace_back(std::move(g), std::move(h));
  }
  return out;
}

size_t sop_rank_abp(const Abp& a, int d1) {
  AbpTransfer t = make_abp_transfer(a);
  // the word-length-e part vanishes iff every spanning row kills the closing
  // vector, which checks homogeneity without expanding anything
  int d = -1;
  for (size_t e = 0; e <= t.depth; ++e) {
    TaggedBasis fb = forward_basis(t, e);
    bool zero = true;
    for (const auto& row : fb.vectors)
      if (!dot(row, t.close, t.field).is_zero()) {
        zero = false;
        break;
      }
    if (zero) continue;
    require(d < 0, Errc::NotHomogeneous, "branching program is not homogeneous");
    d = int(e);
  }
  require(d >= 0, Errc::ZeroPolynomial, "no split of the zero polynomial");
  require(0 < d1 && d1 < d, Errc::BadSplit,
          "split degree must lie strictly between 0 and deg f");
  TaggedBasis fb = forward_basis(t, size_t(d1));
  TaggedBasis bb = backward_basis(t, size_t(d - d1));
  // honest word tags make this a rank-preserving submatrix of the full
  // partial-derivative matrix
  Matrix grid(fb.vectors.size(), bb.vectors.size(), t.field);
  for (size_t i = 0; i < fb.vectors.size(); ++i)
    for (size_t j = 0; j < bb.vectors.size(); ++j)
      grid.at(i, j) = dot(fb.vectors[i], bb.vectors[j], t.field);
  return rank(grid);
}

bool check_rank_certificate(const SparsePoly& f, int d1,
                            const std::vector<Monomial>& rows,
                            const std::vector<Monomial>& cols) {
  auto [dl, dr] = split_degrees(f, d1);
  require(!rows.empty() && rows.size() == cols.size(), Errc::BadDegrees,
          "certificate needs equally many row and column monomials");
  for (const Monomial& m : rows)
    require(int(m.degree()) == dl, Errc::BadDegrees, "certificate row of wrong degree");
  for (const Monomial& m : cols)
    require(int(m.degree()) == dr, Errc::BadDegrees,
            "certificate column of wrong degree");
  Matrix minor(rows.size(), cols.size(), f.field());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      minor.at(i, j) = f.coefficient(rows[i].concat(cols[j]));
  return !determinant(minor).is_zero();
}

std::optional<std::pair<std::vector<Monomial>, std::vector<Monomial>>>
find_rank_certificate(const SparsePoly& f, int d1, size_t k) {
  PDMatrix a = build_pd_matrix(f, d1);
  size_t need = k + 1;
  // any minor touching a monomial outside the occurring index has a zero row
  // or column, so searching the occurring ones is complete
  if (a.row_index.size() < need || a.col_index.size() < need) return std::nullopt;
  uint64_t budget = 2'000'000;
  std::vector<size_t> ri(need), ci(need);
  std::iota(ri.begin(), ri.end(), size_t(0));
  do {
    std::iota(ci.begin(), ci.end(), size_t(0));
    do {
      require(budget-- > 0, Errc::SearchBudgetExceeded,
              "certificate search too large for exhaustive enumeration");
      Matrix minor(need, need, f.field());
      for (size_t i = 0; i < need; ++i)
        for (size_t j = 0; j < need; ++j)
          minor.at(i, j) = a.entries.at(ri[i], ci[j]);
      if (!determinant(minor).is_zero()) {
        std::vector<Monomial> rows, cols;
        for (size_t i : ri) rows.push_back(a.row_index[i]);
        for (size_t j : ci) cols.push_back(a.col_index[j]);
        return std::make_pair(std::move(rows), std::move(cols));
      }
    } while (next_combination(ci, a.col_index.size()));
  } while (next_combination(ri, a.row_index.size()));
  return std::nullopt;
}

Tensor3 Tensor3::zeros(uint32_t n, FieldSpec field) {
  Tensor3 out{n, field, {}};
  out.entries.assign(size_t(n) * n * n, Scalar::zero(field));
  return out;
}

SparsePoly encode_tensor(const Tensor3& t) {
  SparsePoly f(3 * t.n, t.field);
  for (uint32_t i = 0; i < t.n; ++i)
    for (uint32_t j = 0; j < t.n; ++j)
      for (uint32_t k = 0; k < t.n; ++k) {
        const Scalar& c = t.at(i, j, k);
        if (!c.is_zero()) f.add_term(Monomial({i, t.n + j, 2 * t.n + k}), c);
      }
  return f;
}

bool tensor_rank_leq(const Tensor3& t, size_t k) {
  require(t.n <= 2, Errc::SearchBudgetExceeded,
          "exhaustive tensor search is limited to n <= 2");
  bool f2 = t.field.is_prime_field() && t.field.characteristic() == 2;
  require(f2 || t.field.is_rationals(), Errc::SearchBudgetExceeded,
          "search grids exist for F_2 and the rationals only");
  bool all_zero = std::all_of(t.entries.begin(), t.entries.end(),
                              [](const Scalar& s) { return s.is_zero(); });
  if (all_zero) return true;
  if (k == 0) return false;
  std::vector<Scalar> choices;
  if (f2)
    choices = {Scalar::from_int(t.field, 0), Scalar::from_int(t.field, 1)};
  else
    choices = {Scalar::from_int(t.field, -1), Scalar::from_int(t.field, 0),
               Scalar::from_int(t.field, 1)};
  // every nonzero vector over the grid; a rank-one term with any zero factor
  // vanishes, so those never help
  std::vector<std::vector<Scalar>> vecs;
  std::vector<size_t> idx(t.n, 0);
  for (;;) {
    std::vector<Scalar> v;
    bool nonzero = false;
    for (uint32_t p = 0; p < t.n; ++p) {
      v.push_back(choices[idx[p]]);
      nonzero = nonzero || !v.back().is_zero();
    }
    if (nonzero) vecs.push_back(std::move(v));
    uint32_t p = 0;
    while (p < t.n && ++idx[p] == choices.size()) {
      idx[p] = 0;
      ++p;
    }
    if (p == t.n) break;
  }
  size_t n3 = t.entries.size();
  std::vector<std::vector<Scalar>> terms;
  for (const auto& a : vecs)
    for (const auto& b : vecs)
      for (const auto& c : vecs) {
        std::vector<Scalar> term;
        term.reserve(n3);
        for (uint32_t i = 0; i < t.n; ++i)
          for (uint32_t j = 0; j < t.n; ++j)
            for (uint32_t kk = 0; kk < t.n; ++kk)
              term.push_back(a[i] * b[j] * c[kk]);
        terms.push_back(std::move(term));
      }
  // nondecreasing term indices: decompositions are multisets of terms
  uint64_t budget = 50'000'000;
  std::vector<Scalar> rem = t.entries;
  std::function<bool(size_t, size_t)> dfs = [&](size_t slot, size_t start) -> bool {
    if (std::all_of(rem.begin(), rem.end(),
                    [](const Scalar& s) { return s.is_zero(); }))
      return true;
    if (slot == k) return false;
    for (size_t ti = start; ti < terms.size(); ++ti) {
      require(budget-- > 0, Errc::SearchBudgetExceeded,
              "tensor decomposition search too large");
      for (size_t e = 0; e < n3; ++e) rem[e] = rem[e] - terms[ti][e];
      if (dfs(slot + 1, ti)) return true;
      for (size_t e = 0; e < n3; ++e) rem[e] = rem[e] + terms[ti][e];
    }
    return false;
  };
  return dfs(0, 0);
}

}  // namespace ncfactor
