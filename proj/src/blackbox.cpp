#include "ncfactor/blackbox.hpp"

#include <algorithm>

#include "ncfactor/errors.hpp"

namespace ncfactor {

namespace {

std::optional<uint64_t> sample_range(const FieldSpec& f) {
  if (f.is_rationals()) return uint64_t(1) << 20;
  return std::nullopt;
}

constexpr int kBbTrials = 20;

// Superdiagonal block chain over len steps ((len+1)*t square): the first
// |lead_word| slots consume the lead word left to right (identity block iff
// the variable matches, zero otherwise), the last |tail_word| slots consume
// the tail word, and the slots in between carry the variable's query matrix.
MatrixTuple chain_tuple(uint32_t n, size_t len, const Monomial& lead_word,
                        const Monomial& tail_word, const MatrixTuple& carry,
                        size_t t, const FieldSpec& field) {
  size_t k1 = lead_word.degree();
  size_t k2 = tail_word.degree();
  size_t dim = (len + 1) * t;
  MatrixTuple out;
  for (uint32_t i = 0; i < n; ++i) {
    Matrix x(dim, dim, field);
    for (size_t r = 0; r < len; ++r) {
      if (r < k1) {
        if (lead_word.word[r] == i)
          x.set_block(r * t, (r + 1) * t, Matrix::identity(t, field));
      } else if (r >= len - k2) {
        if (tail_word.word[r - (len - k2)] == i)
          x.set_block(r * t, (r + 1) * t, Matrix::identity(t, field));
      } else {
        x.set_block(r * t, (r + 1) * t, carry.mats[i]);
      }
    }
    out.mats.push_back(std::move(x));
  }
  return out;
}

bool bb_depends_on(const BlackBox& box, VarIndex v, SeededRng& rng) {
  size_t t = std::max<size_t>(2 * size_t(std::max(box.degree_bound(), 0)), 1);
  auto range = sample_range(box.field());
  for (int k = 0; k < kBbTrials; ++k) {
    MatrixTuple pt = MatrixTuple::random(box.var_count(), t, box.field(), rng, range);
    Matrix full = box.query(pt);
    pt.mats[v] = Matrix(t, t, box.field());
    if (!(box.query(pt) == full)) return true;
  }
  return false;
}

}  // namespace

Matrix BlackBox::query(const MatrixTuple& point) const {
  require(point.mats.size() == n_, Errc::VarCountMismatch,
          "query point has the wrong number of matrices");
  require(point.field() == field_, Errc::FieldMismatch,
          "query point over a different field");
  log_->record(point.dim());
  return fn_(point);
}

BlackBox wrap_rep(PolyRep f) {
  uint32_t n = rep_var_count(f);
  int d = rep_degree_bound(f);
  FieldSpec field = rep_field(f);
  auto hidden = std::make_shared<const PolyRep>(std::move(f));
  return BlackBox(n, d, field, [hidden](const MatrixTuple& pt) {
    return eval_rep(*hidden, pt);
  });
}

BlackBox scale_oracle(const BlackBox& bb, const Scalar& c) {
  return BlackBox(bb.var_count(), bb.degree_bound(), bb.field(),
                  [bb, c](const MatrixTuple& pt) { return bb.query(pt).scale(c); });
}

BlackBox left_derivative_oracle(const BlackBox& bb, const Monomial& m1) {
  int k = int(m1.degree());
  require(k <= bb.degree_bound(), Errc::DegreeExceeded,
          "derivative order exceeds the degree bound");
  if (k == 0)
    return BlackBox(bb.var_count(), bb.degree_bound(), bb.field(),
                    [bb](const MatrixTuple& pt) { return bb.query(pt); });
  int D = bb.degree_bound();
  return BlackBox(
      bb.var_count(), D - k, bb.field(), [bb, m1, D, k](const MatrixTuple& pt) {
        size_t t = pt.dim();
        MatrixTuple big = chain_tuple(bb.var_count(), size_t(D), m1,
                                      Monomial::unit(), pt, t, bb.field());
        Matrix nres = bb.query(big);
        Matrix acc(t, t, bb.field());
        for (int j = k; j <= D; ++j)
          acc = acc + nres.block(0, size_t(j) * t, t, t);
        return acc;
      });
}

BlackBox right_derivative_oracle(const BlackBox& bb, const Monomial& m2) {
  int k = int(m2.degree());
  require(k <= bb.degree_bound(), Errc::DegreeExceeded,
          "derivative order exceeds the degree bound");
  if (k == 0)
    return BlackBox(bb.var_count(), bb.degree_bound(), bb.field(),
                    [bb](const MatrixTuple& pt) { return bb.query(pt); });
  int D = bb.degree_bound();
  // One chain per word degree j (the suffix flags must sit at position j-k),
  // stacked block-diagonally so a single parent query answers all of them.
  return BlackBox(
      bb.var_count(), D - k, bb.field(), [bb, m2, D, k](const MatrixTuple& pt) {
        size_t t = pt.dim();
        const FieldSpec& field = bb.field();
        std::vector<size_t> off;
        size_t dim = 0;
        for (int j = k; j <= D; ++j) {
          off.push_back(dim);
          dim += (size_t(j) + 1) * t;
        }
        MatrixTuple big;
        for (uint32_t i = 0; i < bb.var_count(); ++i)
          big.mats.push_back(Matrix(dim, dim, field));
        for (int j = k; j <= D; ++j) {
          MatrixTuple comp = chain_tuple(bb.var_count(), size_t(j),
                                         Monomial::unit(), m2, pt, t, field);
          for (uint32_t i = 0; i < bb.var_count(); ++i)
            big.mats[i].set_block(off[size_t(j - k)], off[size_t(j - k)], comp.mats[i]);
        }
        Matrix nres = bb.query(big);
        Matrix acc(t, t, field);
        for (int j = k; j <= D; ++j) {
          size_t o = off[size_t(j - k)];
          acc = acc + nres.block(o, o + size_t(j) * t, t, t);
        }
        return acc;
      });
}

BlackBox two_sided_derivative_oracle(const BlackBox& bb, const Monomial& m1,
                                     const Monomial& m2) {
  int k1 = int(m1.degree());
  int k2 = int(m2.degree());
  require(k1 + k2 <= bb.degree_bound(), Errc::DegreeExceeded,
          "derivative order exceeds the degree bound");
  if (k2 == 0) return left_derivative_oracle(bb, m1);
  if (k1 == 0) return right_derivative_oracle(bb, m2);
  int D = bb.degree_bound();
  // Same stacked per-degree chains as the suffix oracle, but each chain pins
  // the prefix word at its head too. Building both sides into one query keeps
  // the parent dimension linear in D*t instead of composing the two oracles.
  return BlackBox(
      bb.var_count(), D - k1 - k2, bb.field(),
      [bb, m1, m2, D, k1, k2](const MatrixTuple& pt) {
        size_t t = pt.dim();
        const FieldSpec& field = bb.field();
        std::vector<size_t> off;
        size_t dim = 0;
        for (int j = k1 + k2; j <= D; ++j) {
          off.push_back(dim);
          dim += (size_t(j) + 1) * t;
        }
        MatrixTuple big;
        for (uint32_t i = 0; i < bb.var_count(); ++i)
          big.mats.push_back(Matrix(dim, dim, field));
        for (int j = k1 + k2; j <= D; ++j) {
          MatrixTuple comp = chain_tuple(bb.var_count(), size_t(j), m1, m2, pt, t, field);
          size_t o = off[size_t(j - k1 - k2)];
          for (uint32_t i = 0; i < bb.var_count(); ++i)
            big.mats[i].set_block(o, o, comp.mats[i]);
        }
        Matrix nres = bb.query(big);
        Matrix acc(t, t, field);
        for (int j = k1 + k2; j <= D; ++j) {
          size_t o = off[size_t(j - k1 - k2)];
          acc = acc + nres.block(o, o + size_t(j) * t, t, t);
        }
        return acc;
      });
}

MonomialProbe find_max_degree_monomial(const BlackBox& bb, SeededRng& rng) {
  const FieldSpec& field = bb.field();
  uint32_t n = bb.var_count();
  int D = bb.degree_bound();
  auto range = sample_range(field);
  MonomialProbe out{Monomial::unit(), Scalar::zero(field), 0, 0, 0, 0};
  // one all-carry probe reads an evaluation of every homogeneous part at once
  {
    size_t t = std::max<size_t>(2 * size_t(std::max(D, 0)), 1);
    MatrixTuple carry = MatrixTuple::random(n, t, field, rng, range);
    MatrixTuple big =
        chain_tuple(n, size_t(D), Monomial::unit(), Monomial::unit(), carry, t, field);
    Matrix nres = bb.query(big);
    out.degree_probes = 1;
    out.max_probe_dim = std::max<uint64_t>(out.max_probe_dim, big.dim());
    int d = -1;
    for (int j = D; j >= 0 && d < 0; --j)
      if (!nres.block(0, size_t(j) * t, t, t).is_zero()) d = j;
    require(d >= 0, Errc::NotFound,
            "all degree probes vanished: zero polynomial or unlucky seed");
    out.degree = d;
  }
  // grow the prefix one symbol at a time, least variable first; the flag
  // slots pin the candidate prefix and the carries randomize the rest
  for (int kpos = 0; kpos < out.degree; ++kpos) {
    size_t t = 2 * size_t(out.degree);
    bool extended = false;
    for (uint32_t i = 0; i < n && !extended; ++i) {
      Monomial cand = out.monomial.concat(Monomial::var(i));
      MatrixTuple carry = MatrixTuple::random(n, t, field, rng, range);
      MatrixTuple big =
          chain_tuple(n, size_t(out.degree), cand, Monomial::unit(), carry, t, field);
      Matrix nres = bb.query(big);
      out.extension_probes += 1;
      out.max_probe_dim = std::max<uint64_t>(out.max_probe_dim, big.dim());
      if (!nres.block(0, size_t(out.degree) * t, t, t).is_zero()) {
        out.monomial = std::move(cand);
        extended = true;
      }
    }
    require(extended, Errc::NotFound,
            "extension probes vanished: rerun with another seed");
  }
  // the coefficient drops out of the derivative oracle at the zero point
  BlackBox co = two_sided_derivative_oracle(bb, out.monomial, Monomial::unit());
  out.coefficient = co.query(MatrixTuple::zeros(n, 1, field)).at(0, 0);
  require(!out.coefficient.is_zero(), Errc::NotFound,
          "coefficient probe vanished: rerun with another seed");
  return out;
}

BbFactorization bb_vd_factorize(const BlackBox& bb, SeededRng& rng) {
  const FieldSpec field = bb.field();
  MonomialProbe probe = find_max_degree_monomial(bb, rng);
  BbFactorization out{probe.coefficient, {}, {}, probe};
  Scalar alpha = probe.coefficient;
  int d = probe.degree;
  if (d == 0) return out;
  const Monomial& m = probe.monomial;
  auto range = sample_range(field);
  Monomial prefix;
  int pos = 0;
  for (;;) {
    int cd = d - pos;
    Monomial mc = m.suffix_from(size_t(pos));
    BlackBox cur = left_derivative_oracle(bb, prefix);
    bool split = false;
    for (int d1 = 1; d1 < cd && !split; ++d1) {
      Monomial m1 = mc.prefix(size_t(d1));
      Monomial m2 = mc.suffix_from(size_t(d1));
      BlackBox h = left_derivative_oracle(bb, prefix.concat(m1));
      BlackBox g = two_sided_derivative_oracle(bb, prefix, m2);
      // Var(h) from the cheap oracle first; then only those variables are
      // probed on g, stopping at the first overlap.
      std::vector<VarIndex> vh;
      for (VarIndex v = 0; v < bb.var_count(); ++v)
        if (bb_depends_on(h, v, rng)) vh.push_back(v);
      bool overlap = false;
      for (VarIndex v : vh)
        if (bb_depends_on(g, v, rng)) {
          overlap = true;
          break;
        }
      if (overlap) continue;
      // g(m1) = h(m2) = f(prefix m1 m2) = alpha, so the scalar test reduces
      // to alpha/(alpha*alpha); matrix substitution is a ring homomorphism,
      // so the product identity is checkable pointwise.
      Scalar c = alpha / (alpha * alpha);
      size_t t = std::max<size_t>(2 * size_t(cd), 1);
      bool match = true;
      for (int k2 = 0; k2 < kBbTrials && match; ++k2) {
        MatrixTuple pt = MatrixTuple::random(bb.var_count(), t, field, rng, range);
        if (!(cur.query(pt) == (g.query(pt) * h.query(pt)).scale(c))) match = false;
      }
      if (!match) continue;
      out.factors.push_back(scale_oracle(g, alpha.inverse()));
      out.leading_monomials.push_back(m1);
      prefix = prefix.concat(m1);
      pos += d1;
      split = true;
    }
    if (!split) {
      out.factors.push_back(scale_oracle(cur, alpha.inverse()));
      out.leading_monomials.push_back(mc);
      return out;
    }
  }
}

}  // namespace ncfactor
