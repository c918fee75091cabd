#include "ncfactor/circuit.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "ncfactor/errors.hpp"

namespace ncfactor {

Circuit::Circuit(uint32_t n, FieldSpec field, int degree_bound)
    : n_(n), field_(field), degree_bound_(degree_bound) {
  require(degree_bound >= 0, Errc::InvalidArgument,
          "circuit degree bound must be nonnegative");
}

void Circuit::check_ref(uint32_t g) const {
  require(g < gates_.size(), Errc::InvalidArgument,
          "gate refers to a gate that does not exist yet");
}

uint32_t Circuit::push(Gate g) {
  switch (g.op) {
    case Op::Input:
      require(g.var < n_, Errc::VarCountMismatch, "input variable out of range");
      g.syn_degree = 1;
      break;
    case Op::Const:
      require(g.value.field() == field_, Errc::FieldMismatch,
              "constant from a different field");
      g.syn_degree = 0;
      break;
    case Op::Add: {
      int d = 0;
      for (auto& [w, c] : g.addends) {
        check_ref(c);
        require(w.field() == field_, Errc::FieldMismatch,
                "addend weight from a different field");
        d = std::max(d, gates_[c].syn_degree);
      }
      g.syn_degree = d;
      break;
    }
    case Op::Mul:
      check_ref(g.lhs);
      check_ref(g.rhs);
      g.syn_degree = gates_[g.lhs].syn_degree + gates_[g.rhs].syn_degree;
      break;
  }
  gates_.push_back(std::move(g));
  return static_cast<uint32_t>(gates_.size() - 1);
}

uint32_t Circuit::add_input(VarIndex v) {
  Gate g;
  g.op = Op::Input;
  g.var = v;
  g.value = Scalar::zero(field_);
  return push(std::move(g));
}

uint32_t Circuit::add_const(Scalar c) {
  Gate g;
  g.op = Op::Const;
  g.value = std::move(c);
  return push(std::move(g));
}

uint32_t Circuit::add_add(std::vector<std::pair<Scalar, uint32_t>> addends) {
  Gate g;
  g.op = Op::Add;
  g.value = Scalar::zero(field_);
  g.addends = std::move(addends);
  return push(std::move(g));
}

uint32_t Circuit::add_mul(uint32_t lhs, uint32_t rhs) {
  Gate g;
  g.op = Op::Mul;
  g.value = Scalar::zero(field_);
  g.lhs = lhs;
  g.rhs = rhs;
  return push(std::move(g));
}

void Circuit::set_output(uint32_t g) {
  check_ref(g);
  require(gates_[g].syn_degree <= degree_bound_, Errc::DegreeExceeded,
          "output gate exceeds the declared degree bound");
  output_ = g;
}

uint32_t Circuit::output() const {
  require(output_.has_value(), Errc::InvalidArgument, "circuit has no output");
  return *output_;
}

int Circuit::syntactic_degree() const { return gates_[output()].syn_degree; }

Matrix Circuit::eval_on_matrices(const MatrixTuple& point) const {
  require(point.mats.size() == n_, Errc::VarCountMismatch,
          "evaluation point has the wrong number of matrices");
  require(point.field() == field_, Errc::FieldMismatch,
          "evaluation point over a different field");
  size_t t = point.dim();
  std::vector<Matrix> val;
  val.reserve(gates_.size());
  for (const Gate& g : gates_) {
    switch (g.op) {
      case Op::Input:
        val.push_back(point.mats[g.var]);
        break;
      case Op::Const:
        val.push_back(Matrix::identity(t, field_).scale(g.value));
        break;
      case Op::Add: {
        Matrix acc(t, t, field_);
        for (auto& [w, c] : g.addends) acc = acc + val[c].scale(w);
        val.push_back(std::move(acc));
        break;
      }
      case Op::Mul:
        val.push_back(val[g.lhs] * val[g.rhs]);
        break;
    }
  }
  return val[output()];
}

Scalar Circuit::constant_term() const {
  std::vector<Scalar> val;
  val.reserve(gates_.size());
  for (const Gate& g : gates_) {
    switch (g.op) {
      case Op::Input:
        val.push_back(Scalar::zero(field_));
        break;
      case Op::Const:
        val.push_back(g.value);
        break;
      case Op::Add: {
        Scalar acc = Scalar::zero(field_);
        for (auto& [w, c] : g.addends) acc = acc + w * val[c];
        val.push_back(std::move(acc));
        break;
      }
      case Op::Mul:
        val.push_back(val[g.lhs] * val[g.rhs]);
        break;
    }
  }
  return val[output()];
}

SparsePoly Circuit::expand_to_sparse(size_t max_terms) const {
  std::vector<SparsePoly> val;
  val.reserve(gates_.size());
  for (const Gate& g : gates_) {
    switch (g.op) {
      case Op::Input:
        val.push_back(SparsePoly::variable(n_, field_, g.var));
        break;
      case Op::Const:
        val.push_back(SparsePoly::constant(n_, field_, g.value));
        break;
      case Op::Add: {
        SparsePoly acc = SparsePoly::zero(n_, field_);
        for (auto& [w, c] : g.addends) acc = acc + val[c].scale(w);
        val.push_back(std::move(acc));
        break;
      }
      case Op::Mul:
        val.push_back(val[g.lhs] * val[g.rhs]);
        break;
    }
    require(val.back().term_count() <= max_terms, Errc::TermBudgetExceeded,
            "circuit expansion exceeds the term budget");
  }
  return val[output()];
}

Circuit Circuit::homogeneous_part(int j) const {
  require(j >= 0, Errc::InvalidArgument, "homogeneous degree must be nonnegative");
  uint32_t src = output();
  Circuit out(n_, field_, std::max(j, 0));
  if (j > gates_[src].syn_degree) {
    out.set_output(out.add_const(Scalar::zero(field_)));
    return out;
  }
  // comp[g][e] is the gate of out computing the degree-e part of gate g,
  // absent when that part is identically zero by construction.
  std::vector<std::vector<std::optional<uint32_t>>> comp(gates_.size());
  for (uint32_t gi = 0; gi < gates_.size(); ++gi) {
    const Gate& g = gates_[gi];
    int top = std::min(g.syn_degree, j);
    comp[gi].assign(static_cast<size_t>(top) + 1, std::nullopt);
    switch (g.op) {
      case Op::Input:
        if (top >= 1) comp[gi][1] = out.add_input(g.var);
        break;
      case Op::Const:
        if (!g.value.is_zero()) comp[gi][0] = out.add_const(g.value);
        break;
      case Op::Add:
        for (int e = 0; e <= top; ++e) {
          std::vector<std::pair<Scalar, uint32_t>> parts;
          for (auto& [w, c] : g.addends)
            if (e < static_cast<int>(comp[c].size()) && comp[c][e])
              parts.emplace_back(w, *comp[c][e]);
          if (!parts.empty()) comp[gi][e] = out.add_add(std::move(parts));
        }
        break;
      case Op::Mul:
        for (int e = 0; e <= top; ++e) {
          std::vector<std::pair<Scalar, uint32_t>> parts;
          for (int a = 0; a <= e; ++a) {
            int b = e - a;
            if (a >= static_cast<int>(comp[g.lhs].size())) break;
            if (b >= static_cast<int>(comp[g.rhs].size())) continue;
            if (comp[g.lhs][a] && comp[g.rhs][b])
              parts.emplace_back(Scalar::one(field_),
                                 out.add_mul(*comp[g.lhs][a], *comp[g.rhs][b]));
          }
          if (!parts.empty()) comp[gi][e] = out.add_add(std::move(parts));
        }
        break;
    }
  }
  if (j < static_cast<int>(comp[src].size()) && comp[src][j])
    out.set_output(*comp[src][j]);
  else
    out.set_output(out.add_const(Scalar::zero(field_)));
  return out;
}

namespace {

// Sparse (k+1)x(k+1) matrix of gate indices; absent entries are zero.
using GateMatrix = std::map<std::pair<int, int>, uint32_t>;

GateMatrix gate_matrix_product(Circuit& out, const GateMatrix& l,
                               const GateMatrix& r, const FieldSpec& field) {
  std::map<std::pair<int, int>, std::vector<std::pair<Scalar, uint32_t>>> sums;
  for (auto& [lp, lg] : l)
    for (auto& [rp, rg] : r) {
      if (lp.second != rp.first) continue;
      sums[{lp.first, rp.second}].emplace_back(Scalar::one(field),
                                               out.add_mul(lg, rg));
    }
  GateMatrix prod;
  for (auto& [pos, parts] : sums) prod[pos] = out.add_add(std::move(parts));
  return prod;
}

}  // namespace

// Transfer-matrix construction: each gate becomes a (k+1)x(k+1) matrix of
// gates whose (a,b) entry, as a polynomial, collects exactly the part of the
// gate's polynomial that advances a left-prefix match of m from a consumed
// symbols to b, with the matched symbols stripped. Input gates either extend
// the match (constant 1 entry) or sit past it (the variable itself at (k,k));
// products compose as matrix products. Entry (0,k) of the output is the
// derivative.
Circuit Circuit::left_partial(const Monomial& m) const {
  uint32_t src = output();
  int k = static_cast<int>(m.degree());
  Circuit out(n_, field_, degree_bound_);
  std::optional<uint32_t> one_gate;
  auto one = [&]() {
    if (!one_gate) one_gate = out.add_const(Scalar::one(field_));
    return *one_gate;
  };
  std::vector<GateMatrix> mat(gates_.size());
  for (uint32_t gi = 0; gi < gates_.size(); ++gi) {
    const Gate& g = gates_[gi];
    switch (g.op) {
      case Op::Input: {
        GateMatrix e;
        for (int s = 0; s < k; ++s)
          if (m.word[s] == g.var) e[{s, s + 1}] = one();
        e[{k, k}] = out.add_input(g.var);
        mat[gi] = std::move(e);
        break;
      }
      case Op::Const: {
        GateMatrix e;
        if (!g.value.is_zero()) {
          uint32_t cg = out.add_const(g.value);
          for (int s = 0; s <= k; ++s) e[{s, s}] = cg;
        }
        mat[gi] = std::move(e);
        break;
      }
      case Op::Add: {
        std::map<std::pair<int, int>, std::vector<std::pair<Scalar, uint32_t>>>
            sums;
        for (auto& [w, c] : g.addends)
          for (auto& [pos, cg] : mat[c]) sums[pos].emplace_back(w, cg);
        GateMatrix e;
        for (auto& [pos, parts] : sums) e[pos] = out.add_add(std::move(parts));
        mat[gi] = std::move(e);
        break;
      }
      case Op::Mul:
        mat[gi] = gate_matrix_product(out, mat[g.lhs], mat[g.rhs], field_);
        break;
    }
  }
  auto it = mat[src].find({0, k});
  if (it != mat[src].end())
    out.set_output(it->second);
  else
    out.set_output(out.add_const(Scalar::zero(field_)));
  out.degree_bound_ = out.gates_[out.output()].syn_degree;
  return out;
}

// Mirror image of left_partial: state s counts suffix symbols of m already
// committed; an input either is the variable sitting before the match ((0,0))
// or extends the match ((s,s+1) constant 1 when it equals m's s-th symbol).
Circuit Circuit::right_partial(const Monomial& m) const {
  uint32_t src = output();
  int k = static_cast<int>(m.degree());
  Circuit out(n_, field_, degree_bound_);
  std::optional<uint32_t> one_gate;
  auto one = [&]() {
    if (!one_gate) one_gate = out.add_const(Scalar::one(field_));
    return *one_gate;
  };
  std::vector<GateMatrix> mat(gates_.size());
  for (uint32_t gi = 0; gi < gates_.size(); ++gi) {
    const Gate& g = gates_[gi];
    switch (g.op) {
      case Op::Input: {
        GateMatrix e;
        e[{0, 0}] = out.add_input(g.var);
        for (int s = 0; s < k; ++s)
          if (m.word[s] == g.var) e[{s, s + 1}] = one();
        mat[gi] = std::move(e);
        break;
      }
      case Op::Const: {
        GateMatrix e;
        if (!g.value.is_zero()) {
          uint32_t cg = out.add_const(g.value);
          for (int s = 0; s <= k; ++s) e[{s, s}] = cg;
        }
        mat[gi] = std::move(e);
        break;
      }
      case Op::Add: {
        std::map<std::pair<int, int>, std::vector<std::pair<Scalar, uint32_t>>>
            sums;
        for (auto& [w, c] : g.addends)
          for (auto& [pos, cg] : mat[c]) sums[pos].emplace_back(w, cg);
        GateMatrix e;
        for (auto& [pos, parts] : sums) e[pos] = out.add_add(std::move(parts));
        mat[gi] = std::move(e);
        break;
      }
      case Op::Mul:
        mat[gi] = gate_matrix_product(out, mat[g.lhs], mat[g.rhs], field_);
        break;
    }
  }
  auto it = mat[src].find({0, k});
  if (it != mat[src].end())
    out.set_output(it->second);
  else
    out.set_output(out.add_const(Scalar::zero(field_)));
  out.degree_bound_ = out.gates_[out.output()].syn_degree;
  return out;
}

Circuit Circuit::substitute_var_zero(VarIndex v) const {
  Circuit out(n_, field_, degree_bound_);
  for (const Gate& g : gates_) {
    if (g.op == Op::Input && g.var == v)
      out.add_const(Scalar::zero(field_));
    else
      out.push(g);
  }
  out.set_output(output());
  return out;
}

Circuit Circuit::scale(const Scalar& c) const {
  Circuit out = *this;
  out.set_output(out.add_add({{c, output()}}));
  return out;
}

Circuit Circuit::with_var_count(uint32_t new_n) const {
  for (const Gate& g : gates_)
    require(g.op != Op::Input || g.var < new_n, Errc::VarCountMismatch,
            "shrinking below a used variable");
  Circuit out = *this;
  out.n_ = new_n;
  return out;
}

uint32_t Circuit::graft(Circuit& out, const Circuit& a) {
  uint32_t off = static_cast<uint32_t>(out.gates_.size());
  for (Gate g : a.gates_) {
    if (g.op == Circuit::Op::Add)
      for (auto& [w, c] : g.addends) c += off;
    if (g.op == Circuit::Op::Mul) {
      g.lhs += off;
      g.rhs += off;
    }
    out.push(std::move(g));
  }
  return off + a.output();
}

Circuit Circuit::add(const Circuit& a, const Circuit& b, const Scalar& ca,
                     const Scalar& cb) {
  require(a.n_ == b.n_, Errc::VarCountMismatch, "adding circuits over different variable sets");
  require(a.field_ == b.field_, Errc::FieldMismatch, "adding circuits over different fields");
  Circuit out(a.n_, a.field_, std::max(a.degree_bound_, b.degree_bound_));
  uint32_t oa = graft(out, a);
  uint32_t ob = graft(out, b);
  out.set_output(out.add_add({{ca, oa}, {cb, ob}}));
  return out;
}

Circuit Circuit::mul(const Circuit& a, const Circuit& b) {
  require(a.n_ == b.n_, Errc::VarCountMismatch, "multiplying circuits over different variable sets");
  require(a.field_ == b.field_, Errc::FieldMismatch, "multiplying circuits over different fields");
  Circuit out(a.n_, a.field_, a.degree_bound_ + b.degree_bound_);
  uint32_t oa = graft(out, a);
  uint32_t ob = graft(out, b);
  out.set_output(out.add_mul(oa, ob));
  return out;
}

Circuit Circuit::from_sparse(const SparsePoly& p) {
  int d = std::max(p.degree().value_or(0), 0);
  Circuit out(p.var_count(), p.field(), d);
  std::vector<std::optional<uint32_t>> var_gate(p.var_count());
  auto input = [&](VarIndex v) {
    if (!var_gate[v]) var_gate[v] = out.add_input(v);
    return *var_gate[v];
  };
  std::vector<std::pair<Scalar, uint32_t>> sum;
  for (auto& [mono, coef] : p.terms()) {
    std::optional<uint32_t> acc;
    for (VarIndex v : mono.word)
      acc = acc ? out.add_mul(*acc, input(v)) : input(v);
    if (!acc) acc = out.add_const(Scalar::one(p.field()));
    sum.emplace_back(coef, *acc);
  }
  if (sum.empty())
    out.set_output(out.add_const(Scalar::zero(p.field())));
  else
    out.set_output(out.add_add(std::move(sum)));
  return out;
}

// Positioned copies: comp[g][e][s] computes the degree-e homogeneous part of
// gate g with the i-th consumed position (0-based, relative) renamed to
// variable (s+i)*n + original index. The output must be homogeneous of
// degree d, so only its (d, 0) copy survives.
Circuit Circuit::rename_positions(int d) const {
  require(d >= 1, Errc::InvalidArgument, "renaming needs degree at least 1");
  uint32_t src = output();
  Circuit out(n_ * static_cast<uint32_t>(d), field_, d);
  using Table = std::vector<std::vector<std::optional<uint32_t>>>;
  std::vector<Table> comp(gates_.size());
  for (uint32_t gi = 0; gi < gates_.size(); ++gi) {
    const Gate& g = gates_[gi];
    int top = std::min(g.syn_degree, d);
    comp[gi].assign(static_cast<size_t>(top) + 1,
                    std::vector<std::optional<uint32_t>>(
                        static_cast<size_t>(d) + 1, std::nullopt));
    switch (g.op) {
      case Op::Input:
        if (top >= 1)
          for (int s = 0; s + 1 <= d; ++s)
            comp[gi][1][s] =
                out.add_input(static_cast<VarIndex>(s) * n_ + g.var);
        break;
      case Op::Const:
        if (!g.value.is_zero()) {
          uint32_t cg = out.add_const(g.value);
          for (int s = 0; s <= d; ++s) comp[gi][0][s] = cg;
        }
        break;
      case Op::Add:
        for (int e = 0; e <= top; ++e)
          for (int s = 0; s + e <= d; ++s) {
            std::vector<std::pair<Scalar, uint32_t>> parts;
            for (auto& [w, c] : g.addends)
              if (e < static_cast<int>(comp[c].size()) && comp[c][e][s])
                parts.emplace_back(w, *comp[c][e][s]);
            if (!parts.empty()) comp[gi][e][s] = out.add_add(std::move(parts));
          }
        break;
      case Op::Mul:
        for (int e = 0; e <= top; ++e)
          for (int s = 0; s + e <= d; ++s) {
            std::vector<std::pair<Scalar, uint32_t>> parts;
            for (int a = 0; a <= e; ++a) {
              int b = e - a;
              if (a >= static_cast<int>(comp[g.lhs].size())) break;
              if (b >= static_cast<int>(comp[g.rhs].size())) continue;
              if (comp[g.lhs][a][s] && comp[g.rhs][b][s + a])
                parts.emplace_back(
                    Scalar::one(field_),
                    out.add_mul(*comp[g.lhs][a][s], *comp[g.rhs][b][s + a]));
            }
            if (!parts.empty()) comp[gi][e][s] = out.add_add(std::move(parts));
          }
        break;
    }
  }
  if (d < static_cast<int>(comp[src].size()) && comp[src][d][0])
    out.set_output(*comp[src][d][0]);
  else
    out.set_output(out.add_const(Scalar::zero(field_)));
  return out;
}

Circuit Circuit::unrename_positions(uint32_t orig_n) const {
  require(orig_n >= 1 && n_ % orig_n == 0, Errc::VarCountMismatch,
          "variable count is not a multiple of the original");
  Circuit out(orig_n, field_, degree_bound_);
  for (Gate g : gates_) {
    if (g.op == Op::Input) g.var %= orig_n;
    out.push(std::move(g));
  }
  out.set_output(output());
  return out;
}

}  // namespace ncfactor
