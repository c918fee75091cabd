#pragma once

#include "ncfactor/rep.hpp"
#include "ncfactor/rng.hpp"

namespace ncfactor {

struct PitParams {
  uint64_t seed = 0;
  int trials = 20;
  // Random evaluation over F_p is only accepted for p >= 2^16 unless the
  // caller explicitly opts in to a weaker error bound.
  bool allow_small_field = false;
  uint64_t rational_range = uint64_t(1) << 20;
};

struct PitVerdict {
  bool is_zero = false;
  int trials_used = 0;
  // Nonzero via random evaluation: the point that was hit.
  std::optional<MatrixTuple> witness;
  // Nonzero via the deterministic test: a monomial with nonzero coefficient.
  std::optional<Monomial> witness_monomial;
  // Zero via the deterministic test: monomials whose reachable vectors span
  // every layer; all their coefficients vanish, certifying zeroness.
  std::vector<Monomial> basis_monomials;
};

// Weighted-automaton view of an ABP. Constant-labelled edges move between
// levels without emitting a symbol; closing over them (the level graph is
// acyclic, so the closure is a finite sum) leaves one matrix per variable
// acting on row vectors, a start vector and a closing vector with
//   coefficient of x_{i1}..x_{ik} in f  =  u^T * T_{i1} * .. * T_{ik} * r.
struct AbpTransfer {
  size_t dim = 0;
  FieldSpec field;
  uint32_t n = 0;
  size_t depth = 0;
  std::vector<Matrix> step;    // one per variable
  std::vector<Scalar> start;   // u
  std::vector<Scalar> close;   // r
};

AbpTransfer make_abp_transfer(const Abp& a);

// Basis vectors tagged with the words that honestly produced them: entry j
// is exactly u^T * T_{m_j} (forward) or T_{m_j} * r (backward), |m_j| = len.
struct TaggedBasis {
  std::vector<Monomial> monomials;
  std::vector<std::vector<Scalar>> vectors;
};

TaggedBasis forward_basis(const AbpTransfer& t, size_t len);
TaggedBasis backward_basis(const AbpTransfer& t, size_t len);

// Exact, deterministic. On nonzero input also reports a witness monomial; on
// zero input reports spanning monomials per layer as a certificate.
PitVerdict pit_abp_deterministic(const Abp& a);

// Random matrix substitution of dimension max(2*degree_bound, 1). One-sided:
// a zero polynomial is always reported zero; a nonzero one is missed with
// probability at most 2^-trials (far less at these dimensions).
PitVerdict pit_randomized(const PolyRep& r, const PitParams& params);

// Kind-appropriate zero test: explicit polynomials are inspected directly,
// branching programs deterministically, circuits by random evaluation.
bool rep_is_zero(const PolyRep& r, const PitParams& params);

}  // namespace ncfactor
