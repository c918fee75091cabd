#pragma once

#include <set>

#include "ncfactor/pit.hpp"

namespace ncfactor {

struct VdOptions {
  PitParams pit;
  // Factors are additionally expanded to sparse form when they stay within
  // this many terms; larger ones keep only their structured encoding.
  size_t view_budget = 10000;
  // Skip the multilinearity check on ABP/circuit inputs whose expansion is
  // too large to inspect.
  bool assume_multilinear = false;
};

// f = overall_scalar * factors[0] * ... * factors[r-1], each factor monic at
// its leading monomial (the lexicographically least among maximum-degree
// monomials). For variable-disjoint factorizations var_partition holds the
// pairwise disjoint variable sets of the factors; for the homogeneous
// (ordinary) factorization the sets may overlap.
struct VdFactorization {
  Scalar overall_scalar;
  std::vector<PolyRep> factors;
  std::vector<std::optional<SparsePoly>> sparse_views;
  std::vector<std::set<VarIndex>> var_partition;
  std::vector<Monomial> leading_monomials;
};

// Left-to-right peeling: locate the leading monomial of the top homogeneous
// part by prefix search, then for growing prefix lengths d1 test whether
// g = right_partial(f, m2), h = left_partial(f, m1) gives a variable-disjoint
// split with f = (a/(b*c)) g h; the least d1 that passes peels the unique
// leftmost irreducible factor, and the sweep recurses on h. Constants return
// an empty factor list with the constant as overall_scalar.
VdFactorization vd_factorize(const PolyRep& f, const VdOptions& opts = {});

// Range sweep on explicit polynomials: walk a candidate window m = m1 m2 m3
// over the leading monomial, extract g2 = left_partial(right_partial(f, m3),
// m1) together with the flanking g1, g3, and accept the least window end
// whose three parts are pairwise variable-disjoint and reproduce f. Produces
// the same monic factor list as vd_factorize.
VdFactorization vd_factorize_sparse_range(const SparsePoly& f);

// f == 0 iff f + y*z (fresh variables y, z) factors nontrivially.
bool is_zero_via_vdfact(const PolyRep& f, const VdOptions& opts = {});

// Multilinear polynomials factor completely into irreducibles via the
// variable-disjoint factorization.
VdFactorization factorize_multilinear(const PolyRep& f, const VdOptions& opts = {});

// Homogeneous polynomials: occurrences are renamed per word position, the
// renamed polynomial is factored variable-disjointly, and factors are mapped
// back; this is the unique ordinary factorization into irreducibles.
VdFactorization factorize_homogeneous(const PolyRep& f, const VdOptions& opts = {});

// Exhaustive test oracles for tiny inputs (deg <= 5, <= 12 terms, n <= 4;
// BudgetExceeded otherwise).
VdFactorization brute_force_vd_factorize(const SparsePoly& f);
VdFactorization brute_force_factorize_homogeneous(const SparsePoly& f);

}  // namespace ncfactor
