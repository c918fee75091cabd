#pragma once

#include <vector>

#include "ncfactor/matrix.hpp"
#include "ncfactor/sparse_poly.hpp"

namespace ncfactor {

// Noncommutative arithmetic circuit: a gate list in topological order
// (gates only reference earlier gates). Mul operands are ordered. A degree
// bound D is part of the object and the output's syntactic degree must stay
// within it.
class Circuit {
 public:
  enum class Op { Input, Const, Add, Mul };

  struct Gate {
    Op op;
    VarIndex var = 0;                                  // Input
    Scalar value;                                      // Const
    std::vector<std::pair<Scalar, uint32_t>> addends;  // Add, weighted
    uint32_t lhs = 0, rhs = 0;                         // Mul
    int syn_degree = 0;
  };

  Circuit(uint32_t n, FieldSpec field, int degree_bound);

  uint32_t add_input(VarIndex v);
  uint32_t add_const(Scalar c);
  uint32_t add_add(std::vector<std::pair<Scalar, uint32_t>> addends);
  uint32_t add_mul(uint32_t lhs, uint32_t rhs);
  void set_output(uint32_t g);

  uint32_t var_count() const { return n_; }
  const FieldSpec& field() const { return field_; }
  int degree_bound() const { return degree_bound_; }
  size_t size() const { return gates_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }
  uint32_t output() const;
  int syntactic_degree() const;  // of the output gate

  Matrix eval_on_matrices(const MatrixTuple& point) const;
  Scalar constant_term() const;  // evaluation at the all-zeros point
  SparsePoly expand_to_sparse(size_t max_terms) const;

  Circuit homogeneous_part(int j) const;
  Circuit left_partial(const Monomial& m) const;
  Circuit right_partial(const Monomial& m) const;
  Circuit substitute_var_zero(VarIndex v) const;
  Circuit scale(const Scalar& c) const;
  Circuit with_var_count(uint32_t new_n) const;
  Circuit rename_positions(int d) const;  // homogeneous degree-d input assumed
  Circuit unrename_positions(uint32_t orig_n) const;

  static Circuit add(const Circuit& a, const Circuit& b, const Scalar& ca,
                     const Scalar& cb);
  static Circuit mul(const Circuit& a, const Circuit& b);
  static Circuit from_sparse(const SparsePoly& p);

 private:
  uint32_t push(Gate g);
  void check_ref(uint32_t g) const;
  // Appends a's gates to out and returns the index offset translation of
  // a's output.
  static uint32_t graft(Circuit& out, const Circuit& a);

  uint32_t n_;
  FieldSpec field_;
  int degree_bound_;
  std::vector<Gate> gates_;
  std::optional<uint32_t> output_;
};

}  // namespace ncfactor
