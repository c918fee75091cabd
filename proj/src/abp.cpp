#include "ncfactor/abp.hpp"

#include <algorithm>

namespace ncfactor {

void AffineForm::add_coeff(VarIndex i, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs.emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

bool AffineForm::is_zero() const { return c0.is_zero() && coeffs.empty(); }

Matrix AffineForm::eval(const MatrixTuple& point) const {
  size_t t = point.dim();
  Matrix r(t, t, c0.field());
  if (!c0.is_zero())
    for (size_t i = 0; i < t; ++i) r.at(i, i) = c0;
  for (const auto& [v, c] : coeffs) {
    require(v < point.mats.size(), Errc::VarCountMismatch, "tuple too short for label");
    for (size_t i = 0; i < t; ++i)
      for (size_t j = 0; j < t; ++j)
        if (!point.mats[v].at(i, j).is_zero()) r.at(i, j) += c * point.mats[v].at(i, j);
  }
  return r;
}

Abp::Abp(uint32_t n, FieldSpec field, std::vector<uint32_t> layer_sizes)
    : n_(n), field_(field), sizes_(std::move(layer_sizes)) {
  require(sizes_.size() >= 2, Errc::DimensionMismatch, "need at least source and sink levels");
  require(sizes_.front() == 1 && sizes_.back() == 1, Errc::DimensionMismatch,
          "source and sink levels must have exactly one node");
  for (uint32_t w : sizes_) require(w >= 1, Errc::DimensionMismatch, "empty level");
  edges_.resize(sizes_.size() - 1);
}

uint32_t Abp::width() const { return *std::max_element(sizes_.begin(), sizes_.end()); }

void Abp::add_edge(size_t layer, uint32_t src, uint32_t dst, AffineForm form) {
  require(layer < edges_.size(), Errc::DimensionMismatch, "layer out of range");
  require(src < sizes_[layer] && dst < sizes_[layer + 1], Errc::DimensionMismatch,
          "edge endpoint out of range");
  require(form.c0.field() == field_, Errc::FieldMismatch, "label field");
  for (const auto& [v, c] : form.coeffs) {
    require(v < n_, Errc::VarCountMismatch, "label variable out of range");
    require(c.field() == field_, Errc::FieldMismatch, "label field");
  }
  if (form.is_zero()) return;
  edges_[layer].emplace_back(src, dst, std::move(form));
}

Matrix Abp::eval_on_matrices(const MatrixTuple& point) const {
  require(point.mats.size() >= n_, Errc::VarCountMismatch, "tuple shorter than variable count");
  require(point.field() == field_, Errc::FieldMismatch, "evaluation field");
  size_t t = point.dim();
  std::vector<Matrix> cur(1, Matrix::identity(t, field_));
  for (size_t l = 0; l < edges_.size(); ++l) {
    std::vector<Matrix> next(sizes_[l + 1], Matrix(t, t, field_));
    for (const auto& [src, dst, form] : edges_[l])
      next[dst] = next[dst] + cur[src] * form.eval(point);
    cur = std::move(next);
  }
  return cur[0];
}

SparsePoly Abp::expand_to_sparse(size_t max_terms) const {
  std::vector<SparsePoly> cur(1, SparsePoly::constant(n_, field_, Scalar::one(field_)));
  for (size_t l = 0; l < edges_.size(); ++l) {
    std::vector<SparsePoly> next(sizes_[l + 1], SparsePoly::zero(n_, field_));
    for (const auto& [src, dst, form] : edges_[l]) {
      SparsePoly label(n_, field_);
      label.add_term(Monomial::unit(), form.c0);
      for (const auto& [v, c] : form.coeffs) label.add_term(Monomial::var(v), c);
      next[dst] = next[dst] + cur[src] * label;
      require(next[dst].term_count() <= max_terms, Errc::TermBudgetExceeded,
              "expansion exceeds " + std::to_string(max_terms) + " terms");
    }
    cur = std::move(next);
  }
  return cur[0];
}

namespace {

// Shared scaffolding for the state-machine products below: levels keep the
// original layering, interior nodes are (node, state) pairs, level 0 is
// (source, 0) and the last level is (sink, final_state).
struct StateProduct {
  const Abp& a;
  int states;  // state values 0..states-1

  uint32_t node_of(size_t level, uint32_t v, int s) const {
    size_t depth = a.layer_sizes().size() - 1;
    if (level == 0 || level == depth) return 0;
    return v * uint32_t(states) + uint32_t(s);
  }

  std::vector<uint32_t> sizes() const {
    std::vector<uint32_t> sz = a.layer_sizes();
    for (size_t l = 1; l + 1 < sz.size(); ++l) sz[l] *= uint32_t(states);
    return sz;
  }
};

}  // namespace

Abp Abp::homogeneous_part(int j) const {
  require(j >= 0, Errc::BadDegrees, "negative degree");
  if (size_t(j) > depth()) return Abp(n_, field_, {1, 1});
  StateProduct sp{*this, j + 1};
  Abp out(n_, field_, sp.sizes());
  size_t d = depth();
  for (size_t l = 0; l < d; ++l) {
    for (const auto& [src, dst, form] : edges_[l]) {
      int from_hi = l == 0 ? 0 : j;
      for (int s = 0; s <= from_hi; ++s) {
        auto put = [&](int s2, const AffineForm& f) {
          if (f.is_zero()) return;
          if (l + 1 < d)
            out.add_edge(l, sp.node_of(l, src, s), sp.node_of(l + 1, dst, s2), f);
          else if (s2 == j)
            out.add_edge(l, sp.node_of(l, src, s), 0, f);
        };
        put(s, AffineForm::constant(form.c0));  // constant part keeps the count
        if (s + 1 <= j && !form.coeffs.empty()) {
          AffineForm vf = AffineForm::zero(field_);
          vf.coeffs = form.coeffs;
          put(s + 1, vf);  // variables raise it
        }
      }
    }
  }
  return out;
}

Abp Abp::left_partial(const Monomial& m) const {
  int k = int(m.degree());
  if (size_t(k) > depth()) return Abp(n_, field_, {1, 1});
  StateProduct sp{*this, k + 1};
  Abp out(n_, field_, sp.sizes());
  size_t d = depth();
  for (size_t l = 0; l < d; ++l) {
    for (const auto& [src, dst, form] : edges_[l]) {
      int from_hi = l == 0 ? 0 : k;
      for (int s = 0; s <= from_hi; ++s) {
        auto put = [&](int s2, const AffineForm& f) {
          if (f.is_zero()) return;
          if (l + 1 < d)
            out.add_edge(l, sp.node_of(l, src, s), sp.node_of(l + 1, dst, s2), f);
          else if (s2 == k)
            out.add_edge(l, sp.node_of(l, src, s), 0, f);
        };
        if (s == k) {
          put(k, form);  // prefix consumed: carry constants and variables
        } else {
          put(s, AffineForm::constant(form.c0));
          auto it = form.coeffs.find(m.word[s]);
          if (it != form.coeffs.end()) put(s + 1, AffineForm::constant(it->second));
        }
      }
    }
  }
  return out;
}

Abp Abp::right_partial(const Monomial& m) const {
  int k = int(m.degree());
  if (size_t(k) > depth()) return Abp(n_, field_, {1, 1});
  StateProduct sp{*this, k + 1};
  Abp out(n_, field_, sp.sizes());
  size_t d = depth();
  for (size_t l = 0; l < d; ++l) {
    for (const auto& [src, dst, form] : edges_[l]) {
      int from_hi = l == 0 ? 0 : k;
      for (int s = 0; s <= from_hi; ++s) {
        auto put = [&](int s2, const AffineForm& f) {
          if (f.is_zero()) return;
          if (l + 1 < d)
            out.add_edge(l, sp.node_of(l, src, s), sp.node_of(l + 1, dst, s2), f);
          else if (s2 == k)
            out.add_edge(l, sp.node_of(l, src, s), 0, f);
        };
        if (s == 0) {
          put(0, form);  // carrying the left part: constants and variables both stay
        } else {
          put(s, AffineForm::constant(form.c0));
        }
        if (s < k) {
          auto it = form.coeffs.find(m.word[s]);
          if (it != form.coeffs.end()) put(s + 1, AffineForm::constant(it->second));
        }
      }
    }
  }
  return out;
}

Abp Abp::substitute_var_zero(VarIndex v) const {
  Abp out(n_, field_, sizes_);
  for (size_t l = 0; l < edges_.size(); ++l)
    for (auto [src, dst, form] : edges_[l]) {
      form.coeffs.erase(v);
      out.add_edge(l, src, dst, std::move(form));
    }
  return out;
}

Abp Abp::scale(const Scalar& c) const {
  require(c.field() == field_, Errc::FieldMismatch, "scale by foreign scalar");
  Abp out(n_, field_, sizes_);
  for (size_t l = 0; l < edges_.size(); ++l)
    for (auto [src, dst, form] : edges_[l]) {
      if (l == 0) {
        form.c0 *= c;
        for (auto& [v, cc] : form.coeffs) cc *= c;
      }
      out.add_edge(l, src, dst, std::move(form));
    }
  return out;
}

Abp Abp::with_var_count(uint32_t new_n) const {
  require(new_n >= n_, Errc::VarCountMismatch, "cannot shrink variable range");
  Abp out(new_n, field_, sizes_);
  for (size_t l = 0; l < edges_.size(); ++l)
    for (const auto& [src, dst, form] : edges_[l]) out.add_edge(l, src, dst, form);
  return out;
}

Abp Abp::rename_positions(int d) const {
  require(d >= 1, Errc::BadDegrees, "renaming needs positive degree");
  require(size_t(d) <= depth(), Errc::BadDegrees, "degree exceeds depth");
  StateProduct sp{*this, d + 1};
  Abp out(uint32_t(n_ * d), field_, sp.sizes());
  size_t dep = depth();
  for (size_t l = 0; l < dep; ++l) {
    for (const auto& [src, dst, form] : edges_[l]) {
      int from_hi = l == 0 ? 0 : d;
      for (int s = 0; s <= from_hi; ++s) {
        auto put = [&](int s2, const AffineForm& f) {
          if (f.is_zero()) return;
          if (l + 1 < dep)
            out.add_edge(l, sp.node_of(l, src, s), sp.node_of(l + 1, dst, s2), f);
          else if (s2 == d)
            out.add_edge(l, sp.node_of(l, src, s), 0, f);
        };
        put(s, AffineForm::constant(form.c0));
        if (s + 1 <= d && !form.coeffs.empty()) {
          AffineForm vf = AffineForm::zero(field_);
          for (const auto& [v, c] : form.coeffs)
            vf.coeffs.emplace(VarIndex(s * int(n_) + int(v)), c);
          put(s + 1, vf);
        }
      }
    }
  }
  return out;
}

Abp Abp::unrename_positions(uint32_t orig_n) const {
  Abp out(orig_n, field_, sizes_);
  for (size_t l = 0; l < edges_.size(); ++l)
    for (const auto& [src, dst, form] : edges_[l]) {
      AffineForm f = AffineForm::constant(form.c0);
      for (const auto& [v, c] : form.coeffs) f.add_coeff(v % orig_n, c);
      out.add_edge(l, src, dst, std::move(f));
    }
  return out;
}

Abp Abp::pad_to_depth(size_t depth_target) const {
  if (depth() >= depth_target) return *this;
  std::vector<uint32_t> sizes = sizes_;
  sizes.insert(sizes.end(), depth_target - depth(), 1);
  Abp out(n_, field_, sizes);
  for (size_t l = 0; l < edges_.size(); ++l)
    for (const auto& [src, dst, form] : edges_[l]) out.add_edge(l, src, dst, form);
  for (size_t l = edges_.size(); l < depth_target; ++l)
    out.add_edge(l, 0, 0, AffineForm::constant(Scalar::one(field_)));
  return out;
}

Abp Abp::add(const Abp& a0, const Abp& b0) {
  require(a0.field_ == b0.field_, Errc::FieldMismatch, "add");
  require(a0.n_ == b0.n_, Errc::VarCountMismatch, "add");
  size_t d = std::max(a0.depth(), b0.depth());
  Abp a = a0.pad_to_depth(d), b = b0.pad_to_depth(d);
  std::vector<uint32_t> sizes(d + 1);
  sizes[0] = sizes[d] = 1;
  for (size_t l = 1; l < d; ++l) sizes[l] = a.sizes_[l] + b.sizes_[l];
  Abp out(a.n_, a.field_, sizes);
  auto splice = [&](const Abp& part, const std::vector<uint32_t>& offsets) {
    for (size_t l = 0; l < d; ++l)
      for (const auto& [src, dst, form] : part.edges_[l]) {
        uint32_t s = l == 0 ? 0 : src + offsets[l];
        uint32_t t = l + 1 == d ? 0 : dst + offsets[l + 1];
        out.add_edge(l, s, t, form);
      }
  };
  splice(a, std::vector<uint32_t>(d + 1, 0));
  std::vector<uint32_t> boff(d + 1, 0);
  for (size_t l = 1; l < d; ++l) boff[l] = a.sizes_[l];
  splice(b, boff);
  return out;
}

Abp Abp::mul(const Abp& a, const Abp& b) {
  require(a.field_ == b.field_, Errc::FieldMismatch, "mul");
  require(a.n_ == b.n_, Errc::VarCountMismatch, "mul");
  std::vector<uint32_t> sizes = a.sizes_;
  sizes.insert(sizes.end(), b.sizes_.begin() + 1, b.sizes_.end());
  Abp out(a.n_, a.field_, sizes);
  for (size_t l = 0; l < a.edges_.size(); ++l)
    for (const auto& [src, dst, form] : a.edges_[l]) out.add_edge(l, src, dst, form);
  for (size_t l = 0; l < b.edges_.size(); ++l)
    for (const auto& [src, dst, form] : b.edges_[l])
      out.add_edge(a.depth() + l, src, dst, form);
  return out;
}

Abp Abp::from_sparse(const SparsePoly& p) {
  size_t d = p.is_zero() ? 1 : size_t(std::max(1, p.degree_or_throw()));
  size_t t = p.term_count();
  std::vector<uint32_t> sizes(d + 1, uint32_t(std::max<size_t>(t, 1)));
  sizes[0] = sizes[d] = 1;
  Abp out(p.var_count(), p.field(), sizes);
  size_t idx = 0;
  for (const auto& [m, c] : p.terms()) {
    for (size_t l = 0; l < d; ++l) {
      AffineForm f = AffineForm::zero(p.field());
      if (l < m.degree()) {
        f.add_coeff(m.word[l], l == 0 ? c : Scalar::one(p.field()));
      } else {
        f.c0 = l == 0 ? c : Scalar::one(p.field());
      }
      uint32_t s = l == 0 ? 0 : uint32_t(idx);
      uint32_t e = l + 1 == d ? 0 : uint32_t(idx);
      out.add_edge(l, s, e, std::move(f));
    }
    ++idx;
  }
  return out;
}

}  // namespace ncfactor
