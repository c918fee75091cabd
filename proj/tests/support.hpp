#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncfactor/abp.hpp"
#include "ncfactor/circuit.hpp"
#include "ncfactor/errors.hpp"
#include "ncfactor/matrix.hpp"
#include "ncfactor/monomial.hpp"
#include "ncfactor/rep.hpp"
#include "ncfactor/rng.hpp"
#include "ncfactor/scalar.hpp"
#include "ncfactor/sparse_poly.hpp"

namespace ncftest {

using namespace ncfactor;

inline FieldSpec f101() { return FieldSpec::prime_field(101); }
inline FieldSpec fbig() { return FieldSpec::prime_field(FieldSpec::kPitPrime); }
inline FieldSpec qq() { return FieldSpec::rationals(); }

inline Scalar rand_scalar(SeededRng& rng, const FieldSpec& f) {
  return sample_uniform(f, rng, f.is_rationals() ? std::optional<uint64_t>(64) : std::nullopt);
}

inline Scalar rand_nonzero(SeededRng& rng, const FieldSpec& f) {
  for (;;) {
    Scalar s = rand_scalar(rng, f);
    if (!s.is_zero()) return s;
  }
}

inline Monomial rand_word(SeededRng& rng, const std::vector<VarIndex>& vars, size_t deg) {
  std::vector<VarIndex> w;
  w.reserve(deg);
  for (size_t i = 0; i < deg; ++i) w.push_back(vars[rng.next_below(vars.size())]);
  return Monomial(w);
}

// deg distinct variables from vars, in random order
inline Monomial rand_multilinear_word(SeededRng& rng, std::vector<VarIndex> vars, size_t deg) {
  std::vector<VarIndex> w;
  for (size_t i = 0; i < deg; ++i) {
    size_t j = rng.next_below(vars.size());
    w.push_back(vars[j]);
    vars.erase(vars.begin() + ptrdiff_t(j));
  }
  return Monomial(w);
}

inline std::vector<VarIndex> all_vars(uint32_t n) {
  std::vector<VarIndex> v(n);
  for (uint32_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Nonzero polynomial in the n-variable ring supported on vars, degree
// exactly max_deg when force_deg (and max_deg > 0), at most `terms` terms.
inline SparsePoly rand_poly(SeededRng& rng, uint32_t n, const std::vector<VarIndex>& vars,
                            int max_deg, int terms, const FieldSpec& field,
                            bool force_deg = true) {
  for (;;) {
    SparsePoly p(n, field);
    for (int i = 0; i < terms; ++i) {
      size_t deg = rng.next_below(size_t(max_deg) + 1);
      if (force_deg && i == 0) deg = size_t(max_deg);
      p.add_term(rand_word(rng, vars, deg), rand_nonzero(rng, field));
    }
    if (p.is_zero()) continue;
    if (force_deg && p.degree_or_throw() != max_deg) continue;
    return p;
  }
}

// Nonzero homogeneous polynomial of degree d supported on vars.
inline SparsePoly rand_hom_poly(SeededRng& rng, uint32_t n, const std::vector<VarIndex>& vars,
                                int d, int terms, const FieldSpec& field) {
  for (;;) {
    SparsePoly p(n, field);
    for (int i = 0; i < terms; ++i)
      p.add_term(rand_word(rng, vars, size_t(d)), rand_nonzero(rng, field));
    if (!p.is_zero()) return p;
  }
}

// Nonzero multilinear polynomial supported on vars, degree <= max_deg.
inline SparsePoly rand_ml_poly(SeededRng& rng, uint32_t n, const std::vector<VarIndex>& vars,
                               int max_deg, int terms, const FieldSpec& field) {
  int cap = std::min<int>(max_deg, int(vars.size()));
  for (;;) {
    SparsePoly p(n, field);
    for (int i = 0; i < terms; ++i) {
      size_t deg = rng.next_below(size_t(cap) + 1);
      p.add_term(rand_multilinear_word(rng, vars, deg), rand_nonzero(rng, field));
    }
    if (!p.is_zero()) return p;
  }
}

// Shuffle 0..n-1 and cut it into `parts` nonempty consecutive chunks.
inline std::vector<std::vector<VarIndex>> split_vars(SeededRng& rng, uint32_t n, int parts) {
  std::vector<VarIndex> pool = all_vars(n);
  for (size_t i = pool.size(); i > 1; --i)
    std::swap(pool[i - 1], pool[rng.next_below(i)]);
  std::vector<std::vector<VarIndex>> out(static_cast<size_t>(parts));
  for (size_t i = 0; i < pool.size(); ++i) {
    size_t slot = i < size_t(parts) ? i : rng.next_below(size_t(parts));
    out[slot].push_back(pool[i]);
  }
  for (auto& s : out) std::sort(s.begin(), s.end());
  return out;
}

// Product of `parts` nonconstant polynomials over pairwise disjoint variable
// sets. Each factor has degree in [1, max_deg_each].
inline SparsePoly rand_vd_product(SeededRng& rng, uint32_t n, int parts, int max_deg_each,
                                  int terms_each, const FieldSpec& field,
                                  std::vector<SparsePoly>* out_factors = nullptr) {
  auto sets = split_vars(rng, n, parts);
  SparsePoly f(n, field);
  f.add_term(Monomial::unit(), Scalar::one(field));
  if (out_factors) out_factors->clear();
  for (auto& vars : sets) {
    int d = 1 + int(rng.next_below(size_t(max_deg_each)));
    SparsePoly g = rand_poly(rng, n, vars, d, terms_each, field);
    if (out_factors) out_factors->push_back(g);
    f = f * g;
  }
  return f;
}

// Definitional convolution coefficient: sum of f(m1)*g(m2) over all splits
// m = m1 m2. Independent of the library's product loop.
inline Scalar conv_coefficient(const SparsePoly& f, const SparsePoly& g, const Monomial& m) {
  Scalar acc = Scalar::zero(f.field());
  for (size_t i = 0; i <= m.degree(); ++i)
    acc += f.coefficient(m.prefix(i)) * g.coefficient(m.suffix_from(i));
  return acc;
}

// Definitional left partial: strip the prefix from every matching term.
inline SparsePoly naive_left_partial(const SparsePoly& f, const Monomial& m) {
  SparsePoly out(f.var_count(), f.field());
  for (const auto& [w, c] : f.terms())
    if (w.has_prefix(m)) out.add_term(w.suffix_from(m.degree()), c);
  return out;
}

inline SparsePoly naive_right_partial(const SparsePoly& f, const Monomial& m) {
  SparsePoly out(f.var_count(), f.field());
  for (const auto& [w, c] : f.terms())
    if (w.has_suffix(m)) out.add_term(w.prefix(w.degree() - m.degree()), c);
  return out;
}

inline Abp rand_abp(SeededRng& rng, uint32_t n, const FieldSpec& field, size_t max_depth = 4,
                    uint32_t max_width = 3) {
  size_t depth = 1 + rng.next_below(max_depth);
  std::vector<uint32_t> sizes{1};
  for (size_t l = 1; l < depth; ++l) sizes.push_back(1 + uint32_t(rng.next_below(max_width)));
  sizes.push_back(1);
  Abp a(n, field, sizes);
  for (size_t l = 0; l + 1 < sizes.size(); ++l)
    for (uint32_t s = 0; s < sizes[l]; ++s)
      for (uint32_t d = 0; d < sizes[l + 1]; ++d) {
        if (rng.next_below(4) == 0) continue;
        AffineForm form = AffineForm::zero(field);
        if (rng.next_below(2) == 0) form.c0 = rand_scalar(rng, field);
        for (uint32_t v = 0; v < n; ++v)
          if (rng.next_below(3) == 0) form.add_coeff(v, rand_scalar(rng, field));
        a.add_edge(l, s, d, form);
      }
  return a;
}

inline Circuit rand_circuit(SeededRng& rng, uint32_t n, const FieldSpec& field,
                            int degree_bound = 6) {
  Circuit c(n, field, degree_bound);
  std::vector<uint32_t> pool;
  for (uint32_t v = 0; v < n; ++v) pool.push_back(c.add_input(v));
  pool.push_back(c.add_const(rand_scalar(rng, field)));
  size_t extra = 3 + rng.next_below(6);
  for (size_t i = 0; i < extra; ++i) {
    uint32_t a = pool[rng.next_below(pool.size())];
    uint32_t b = pool[rng.next_below(pool.size())];
    bool mul = rng.next_below(2) == 0 &&
               c.gates()[a].syn_degree + c.gates()[b].syn_degree <= degree_bound;
    if (mul) {
      pool.push_back(c.add_mul(a, b));
    } else {
      pool.push_back(c.add_add({{rand_nonzero(rng, field), a}, {rand_scalar(rng, field), b}}));
    }
  }
  c.set_output(pool.back());
  return c;
}

}  // namespace ncftest
