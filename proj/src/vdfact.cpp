#include "ncfactor/vdfact.hpp"

#include <algorithm>

#include "ncfactor/errors.hpp"

namespace ncfactor {

namespace {

bool nonzero(const PolyRep& r, const PitParams& p) { return !rep_is_zero(r, p); }

PolyRep rep_diff(const PolyRep& a, const PolyRep& b) {
  Scalar one = Scalar::one(rep_field(a));
  return rep_add(a, b, one, -one);
}

std::set<VarIndex> var_set_of(const PolyRep& r, const PitParams& p) {
  if (auto* s = std::get_if<SparsePoly>(&r)) return s->var_set();
  std::set<VarIndex> vars;
  for (VarIndex v = 0; v < rep_var_count(r); ++v)
    if (nonzero(rep_diff(r, rep_substitute_var_zero(r, v)), p)) vars.insert(v);
  return vars;
}

bool depends_on_var(const PolyRep& r, VarIndex v, const PitParams& p) {
  if (auto* s = std::get_if<SparsePoly>(&r)) return s->depends_on(v);
  return nonzero(rep_diff(r, rep_substitute_var_zero(r, v)), p);
}

int true_degree(const PolyRep& r, const PitParams& p) {
  if (auto* s = std::get_if<SparsePoly>(&r)) {
    require(!s->is_zero(), Errc::ZeroPolynomial, "factoring the zero polynomial");
    return s->degree_or_throw();
  }
  for (int j = rep_degree_bound(r); j >= 0; --j)
    if (nonzero(rep_homogeneous_part(r, j), p)) return j;
  fail(Errc::ZeroPolynomial, "factoring the zero polynomial");
}

// Lexicographically least maximum-degree monomial, found by prefix search on
// the top homogeneous part: extend with the least variable whose extended
// prefix still has a nonzero left derivative.
Monomial leading_monomial_search(const PolyRep& top, int d, const PitParams& p) {
  if (auto* s = std::get_if<SparsePoly>(&top)) return s->max_degree_monomial_lex();
  PolyRep state = top;
  Monomial m;
  uint32_t n = rep_var_count(top);
  for (int k = 0; k < d; ++k) {
    bool extended = false;
    for (VarIndex i = 0; i < n && !extended; ++i) {
      PolyRep cand = rep_left_partial(state, Monomial::var(i));
      if (nonzero(cand, p)) {
        m = m.concat(Monomial::var(i));
        state = std::move(cand);
        extended = true;
      }
    }
    require(extended, Errc::PitFailure,
            "prefix search stalled; rerun with a different seed");
  }
  return m;
}

void emit_factor(VdFactorization& out, PolyRep fac, Monomial lead,
                 const VdOptions& opts) {
  out.sparse_views.push_back(std::nullopt);
  try {
    out.sparse_views.back() = expand_rep(fac, opts.view_budget);
  } catch (const Error& e) {
    if (e.code() != Errc::TermBudgetExceeded) throw;
  }
  out.var_partition.push_back(var_set_of(fac, opts.pit));
  out.leading_monomials.push_back(std::move(lead));
  out.factors.push_back(std::move(fac));
}

bool intersects(const std::set<VarIndex>& a, const std::set<VarIndex>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) ++ia; else ++ib;
  }
  return false;
}

}  // namespace

VdFactorization vd_factorize(const PolyRep& f, const VdOptions& opts) {
  const FieldSpec field = rep_field(f);
  VdFactorization out{Scalar::one(field), {}, {}, {}, {}};
  int d = true_degree(f, opts.pit);
  if (d == 0) {
    out.overall_scalar = rep_coefficient(f, Monomial::unit());
    return out;
  }
  Monomial m = leading_monomial_search(rep_homogeneous_part(f, d), d, opts.pit);
  out.overall_scalar = rep_coefficient(f, m);
  require(!out.overall_scalar.is_zero(), Errc::PitFailure,
          "prefix search returned a vanishing coefficient");
  PolyRep cur = f;
  int pos = 0;  // cur's leading monomial is m with the first pos symbols stripped
  for (;;) {
    int cd = d - pos;
    Monomial mc = m.suffix_from(size_t(pos));
    Scalar alpha = rep_coefficient(cur, mc);
    require(!alpha.is_zero(), Errc::PitFailure, "leading coefficient vanished");
    bool split = false;
    for (int d1 = 1; d1 < cd && !split; ++d1) {
      Monomial m1 = mc.prefix(size_t(d1));
      Monomial m2 = mc.suffix_from(size_t(d1));
      PolyRep g = rep_right_partial(cur, m2);
      // m1 sits in g's support with cur's leading coefficient, by the unique
      // split of the leading monomial.
      Scalar beta = rep_coefficient(g, m1);
      require(!beta.is_zero(), Errc::PitFailure,
              "derivative lost the leading coefficient");
      std::set<VarIndex> vg = var_set_of(g, opts.pit);
      PolyRep h = rep_left_partial(cur, m1);
      bool overlap = false;
      for (VarIndex v : vg)
        if (depends_on_var(h, v, opts.pit)) {
          overlap = true;
          break;
        }
      if (overlap) continue;
      Scalar gamma = rep_coefficient(h, m2);
      require(!gamma.is_zero(), Errc::PitFailure,
              "derivative lost the leading coefficient");
      Scalar c = alpha / (beta * gamma);
      PolyRep recon = rep_scale(rep_mul(g, h), c);
      if (!rep_is_zero(rep_diff(cur, recon), opts.pit)) continue;
      emit_factor(out, rep_scale(g, beta.inverse()), m1, opts);
      cur = std::move(h);
      pos += d1;
      split = true;
    }
    if (!split) {
      emit_factor(out, rep_scale(cur, alpha.inverse()), mc, opts);
      return out;
    }
  }
}

VdFactorization vd_factorize_sparse_range(const SparsePoly& f) {
  require(!f.is_zero(), Errc::ZeroPolynomial, "factoring the zero polynomial");
  const FieldSpec field = f.field();
  const VdOptions opts;  // sparse path never reaches randomized testing
  VdFactorization out{Scalar::one(field), {}, {}, {}, {}};
  int d = f.degree_or_throw();
  if (d == 0) {
    out.overall_scalar = f.coefficient(Monomial::unit());
    return out;
  }
  Monomial m = f.max_degree_monomial_lex();
  Scalar alpha = f.coefficient(m);
  out.overall_scalar = alpha;
  int a = 1;
  while (a <= d) {
    int accepted = 0;
    for (int b = a; b <= d && accepted == 0; ++b) {
      Monomial m1 = m.prefix(size_t(a - 1));
      Monomial m2 = m.subword(size_t(a - 1), size_t(b - a + 1));
      Monomial m3 = m.suffix_from(size_t(b));
      SparsePoly g1 = f.right_partial(m2.concat(m3));
      SparsePoly g2 = f.right_partial(m3).left_partial(m1);
      SparsePoly g3 = f.left_partial(m1.concat(m2));
      std::set<VarIndex> v1 = g1.var_set(), v2 = g2.var_set(), v3 = g3.var_set();
      if (intersects(v1, v2) || intersects(v1, v3) || intersects(v2, v3)) continue;
      Scalar b1 = g1.coefficient(m1);
      Scalar b2 = g2.coefficient(m2);
      Scalar b3 = g3.coefficient(m3);
      require(!b1.is_zero() && !b2.is_zero() && !b3.is_zero(), Errc::PitFailure,
              "derivative lost the leading coefficient");
      Scalar c = alpha / (b1 * b2 * b3);
      if ((g1 * g2 * g3).scale(c) != f) continue;
      emit_factor(out, g2.scale(b2.inverse()), m2, opts);
      accepted = b;
    }
    // the full-tail window always passes, so the sweep advances
    require(accepted != 0, Errc::PitFailure, "range sweep found no window");
    a = accepted + 1;
  }
  return out;
}

bool is_zero_via_vdfact(const PolyRep& f, const VdOptions& opts) {
  uint32_t n = rep_var_count(f);
  const FieldSpec field = rep_field(f);
  Scalar one = Scalar::one(field);
  PolyRep wide = rep_with_var_count(f, n + 2);
  SparsePoly yz = SparsePoly::monomial(
      n + 2, field, Monomial::var(n).concat(Monomial::var(n + 1)), one);
  PolyRep probe = [&]() -> PolyRep {
    switch (rep_kind(f)) {
      case RepKind::Sparse:
        return std::get<SparsePoly>(wide) + yz;
      case RepKind::Abp:
        return Abp::add(std::get<Abp>(wide), Abp::from_sparse(yz));
      default:
        return Circuit::add(std::get<Circuit>(wide), Circuit::from_sparse(yz), one, one);
    }
  }();
  return vd_factorize(probe, opts).factors.size() >= 2;
}

VdFactorization factorize_multilinear(const PolyRep& f, const VdOptions& opts) {
  if (auto* s = std::get_if<SparsePoly>(&f)) {
    require(s->is_multilinear(), Errc::NotMultilinear, "input is not multilinear");
  } else if (!opts.assume_multilinear) {
    SparsePoly e = expand_rep(f, opts.view_budget);
    require(e.is_multilinear(), Errc::NotMultilinear, "input is not multilinear");
  }
  return vd_factorize(f, opts);
}

VdFactorization factorize_homogeneous(const PolyRep& f, const VdOptions& opts) {
  const FieldSpec field = rep_field(f);
  int d;
  if (auto* s = std::get_if<SparsePoly>(&f)) {
    require(!s->is_zero(), Errc::ZeroPolynomial, "factoring the zero polynomial");
    require(s->is_homogeneous(), Errc::NotHomogeneous, "input is not homogeneous");
    d = s->degree_or_throw();
  } else {
    d = true_degree(f, opts.pit);
    for (int j = 0; j < d; ++j)
      require(rep_is_zero(rep_homogeneous_part(f, j), opts.pit),
              Errc::NotHomogeneous, "input is not homogeneous");
  }
  VdFactorization out{Scalar::one(field), {}, {}, {}, {}};
  if (d == 0) {
    out.overall_scalar = rep_coefficient(f, Monomial::unit());
    return out;
  }
  uint32_t n = rep_var_count(f);
  VdFactorization ren = vd_factorize(rep_rename_positions(f, d), opts);
  out.overall_scalar = ren.overall_scalar;
  for (size_t i = 0; i < ren.factors.size(); ++i) {
    out.factors.push_back(rep_unrename_positions(ren.factors[i], n));
    std::optional<SparsePoly> view;
    if (ren.sparse_views[i]) view = ren.sparse_views[i]->unrename_positions(n);
    out.sparse_views.push_back(std::move(view));
    std::set<VarIndex> vars;
    for (VarIndex v : ren.var_partition[i]) vars.insert(v % n);
    out.var_partition.push_back(std::move(vars));
    Monomial lead;
    for (VarIndex v : ren.leading_monomials[i].word)
      lead = lead.concat(Monomial::var(v % n));
    out.leading_monomials.push_back(std::move(lead));
  }
  return out;
}

namespace {

void check_brute_budget(const SparsePoly& f) {
  require(f.var_count() <= 4 && f.term_count() <= 12 && f.degree().value_or(0) <= 5,
          Errc::BudgetExceeded, "instance too large for the exhaustive oracle");
}

// Tries to write f = g*h with Var(g) = S, Var(h) = T: every monomial must
// split as (word over S)(word over T), the split pairs must fill a complete
// grid, and the grid's coefficient matrix must have rank 1.
std::optional<std::pair<SparsePoly, SparsePoly>> try_bipartition(
    const SparsePoly& f, const std::set<VarIndex>& S, const std::set<VarIndex>& T) {
  std::set<Monomial, DeglexLess> P, Q;
  for (auto& [w, c] : f.terms()) {
    size_t cut = 0;
    while (cut < w.word.size() && S.count(w.word[cut])) ++cut;
    for (size_t j = cut; j < w.word.size(); ++j)
      if (!T.count(w.word[j])) return std::nullopt;
    P.insert(w.prefix(cut));
    Q.insert(w.suffix_from(cut));
  }
  if (P.size() * Q.size() != f.term_count()) return std::nullopt;
  const Monomial& u0 = *P.begin();
  const Monomial& v0 = *Q.begin();
  Scalar pivot = f.coefficient(u0.concat(v0));
  size_t dg = 0, dh = 0;
  for (auto& u : P) dg = std::max(dg, u.degree());
  for (auto& v : Q) dh = std::max(dh, v.degree());
  if (dg == 0 || dh == 0) return std::nullopt;
  for (auto& u : P)
    for (auto& v : Q) {
      Scalar muv = f.coefficient(u.concat(v));
      if (muv * pivot != f.coefficient(u.concat(v0)) * f.coefficient(u0.concat(v)))
        return std::nullopt;
    }
  SparsePoly g(f.var_count(), f.field()), h(f.var_count(), f.field());
  for (auto& u : P) g.add_term(u, f.coefficient(u.concat(v0)));
  for (auto& v : Q) h.add_term(v, f.coefficient(u0.concat(v)) / pivot);
  return std::make_pair(std::move(g), std::move(h));
}

void brute_split(const SparsePoly& p, VdFactorization& out, const VdOptions& opts) {
  std::set<VarIndex> vset = p.var_set();
  std::vector<VarIndex> vars(vset.begin(), vset.end());
  size_t k = vars.size();
  for (uint64_t mask = 1; k >= 2 && mask + 1 < (uint64_t(1) << k); ++mask) {
    std::set<VarIndex> S, T;
    for (size_t i = 0; i < k; ++i) (mask >> i & 1 ? S : T).insert(vars[i]);
    auto split = try_bipartition(p, S, T);
    if (!split) continue;
    brute_split(split->first, out, opts);
    brute_split(split->second, out, opts);
    return;
  }
  emit_factor(out, p.monic(), p.max_degree_monomial_lex(), opts);
}

}  // namespace

VdFactorization brute_force_vd_factorize(const SparsePoly& f) {
  require(!f.is_zero(), Errc::ZeroPolynomial, "factoring the zero polynomial");
  check_brute_budget(f);
  const VdOptions opts;
  VdFactorization out{Scalar::one(f.field()), {}, {}, {}, {}};
  if (f.degree_or_throw() == 0) {
    out.overall_scalar = f.coefficient(Monomial::unit());
    return out;
  }
  out.overall_scalar = f.leading_coefficient();
  brute_split(f, out, opts);
  return out;
}

VdFactorization brute_force_factorize_homogeneous(const SparsePoly& f) {
  require(!f.is_zero(), Errc::ZeroPolynomial, "factoring the zero polynomial");
  check_brute_budget(f);
  require(f.is_homogeneous(), Errc::NotHomogeneous, "input is not homogeneous");
  const VdOptions opts;
  VdFactorization out{Scalar::one(f.field()), {}, {}, {}, {}};
  if (f.degree_or_throw() == 0) {
    out.overall_scalar = f.coefficient(Monomial::unit());
    return out;
  }
  out.overall_scalar = f.leading_coefficient();
  SparsePoly cur = f;
  for (;;) {
    int cd = cur.degree_or_throw();
    bool peeled = false;
    for (int d1 = 1; d1 < cd && !peeled; ++d1) {
      std::set<Monomial, DeglexLess> P, Q;
      for (auto& [w, c] : cur.terms()) {
        P.insert(w.prefix(size_t(d1)));
        Q.insert(w.suffix_from(size_t(d1)));
      }
      if (P.size() * Q.size() != cur.term_count()) continue;
      const Monomial& u0 = *P.begin();
      const Monomial& v0 = *Q.begin();
      Scalar pivot = cur.coefficient(u0.concat(v0));
      bool rank1 = true;
      for (auto& u : P) {
        for (auto& v : Q) {
          Scalar muv = cur.coefficient(u.concat(v));
          if (muv.is_zero() ||
              muv * pivot != cur.coefficient(u.concat(v0)) * cur.coefficient(u0.concat(v))) {
            rank1 = false;
            break;
          }
        }
        if (!rank1) break;
      }
      if (!rank1) continue;
      SparsePoly g(cur.var_count(), cur.field()), h(cur.var_count(), cur.field());
      for (auto& u : P) g.add_term(u, cur.coefficient(u.concat(v0)));
      for (auto& v : Q) h.add_term(v, cur.coefficient(u0.concat(v)) / pivot);
      emit_factor(out, g.monic(), g.max_degree_monomial_lex(), opts);
      cur = std::move(h);
      peeled = true;
    }
    if (!peeled) {
      emit_factor(out, cur.monic(), cur.max_degree_monomial_lex(), opts);
      return out;
    }
  }
}

}  // namespace ncfactor
