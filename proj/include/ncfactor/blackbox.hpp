#pragma once

#include <atomic>
#include <functional>
#include <memory>

#include "ncfactor/rep.hpp"
#include "ncfactor/rng.hpp"

namespace ncfactor {

struct QueryLog {
  std::atomic<uint64_t> calls{0};
  std::atomic<uint64_t> max_dim{0};

  void record(size_t dim) {
    calls.fetch_add(1, std::memory_order_relaxed);
    uint64_t seen = max_dim.load(std::memory_order_relaxed);
    while (seen < dim &&
           !max_dim.compare_exchange_weak(seen, dim, std::memory_order_relaxed)) {
    }
  }
};

// Matrix-evaluation oracle: all structure of the hidden polynomial must be
// recovered through query(). Each box logs its call count and the largest
// matrix dimension it was queried at; derived oracles own fresh logs, while
// their internal calls to the parent are charged to the parent's log.
class BlackBox {
 public:
  using QueryFn = std::function<Matrix(const MatrixTuple&)>;

  BlackBox(uint32_t n, int degree_bound, FieldSpec field, QueryFn fn)
      : n_(n), degree_bound_(degree_bound), field_(field), fn_(std::move(fn)),
        log_(std::make_shared<QueryLog>()) {}

  Matrix query(const MatrixTuple& point) const;

  uint32_t var_count() const { return n_; }
  int degree_bound() const { return degree_bound_; }
  const FieldSpec& field() const { return field_; }
  const std::shared_ptr<QueryLog>& log() const { return log_; }

 private:
  uint32_t n_;
  int degree_bound_;
  FieldSpec field_;
  QueryFn fn_;
  std::shared_ptr<QueryLog> log_;
};

// Hides a white-box representation behind query-only access.
BlackBox wrap_rep(PolyRep f);

// c * f, lazily.
BlackBox scale_oracle(const BlackBox& bb, const Scalar& c);

// Derivative oracles built from block shift matrices: a query of dimension t
// is answered by one parent query on structured block matrices (prefix- or
// suffix-consuming flag blocks next to variable-carrying blocks) and reading
// off t x t blocks of the result. Degree bound drops by the monomial length.
BlackBox left_derivative_oracle(const BlackBox& bb, const Monomial& m1);
BlackBox right_derivative_oracle(const BlackBox& bb, const Monomial& m2);
BlackBox two_sided_derivative_oracle(const BlackBox& bb, const Monomial& m1,
                                     const Monomial& m2);

struct MonomialProbe {
  Monomial monomial;
  Scalar coefficient;
  int degree = 0;
  uint64_t degree_probes = 0;
  uint64_t extension_probes = 0;  // at most n * degree
  uint64_t max_probe_dim = 0;     // at most (degree_bound+1) * 2 * degree
};

// Leading-monomial search: one block-shift probe reads off the top nonzero
// homogeneous degree d, then at most n*d single-shot extension probes grow
// the lexicographically least maximum-degree monomial one symbol at a time;
// a final derivative probe reads the coefficient exactly. NotFound when
// every probe vanishes (zero polynomial, or unlucky randomness).
MonomialProbe find_max_degree_monomial(const BlackBox& bb, SeededRng& rng);

struct BbFactorization {
  Scalar overall_scalar;
  std::vector<BlackBox> factors;  // monic factor oracles, left to right
  std::vector<Monomial> leading_monomials;
  MonomialProbe probe;
};

// Black-box variable-disjoint factorization: mirrors the white-box sweep,
// with variable sets and the product identity decided by randomized
// evaluation (20 trials at dimension 2 * current degree bound). Every factor
// oracle is derived directly from the root box, so query depth stays at two.
BbFactorization bb_vd_factorize(const BlackBox& bb, SeededRng& rng);

}  // namespace ncfactor
