#pragma once

#include <variant>

#include "ncfactor/abp.hpp"
#include "ncfactor/circuit.hpp"
#include "ncfactor/sparse_poly.hpp"

namespace ncfactor {

// A polynomial in any of the three supported encodings. Operations below
// stay within the encoding of their argument(s).
using PolyRep = std::variant<SparsePoly, Abp, Circuit>;

enum class RepKind { Sparse, Abp, Circuit };

RepKind rep_kind(const PolyRep& r);
const char* rep_kind_name(RepKind k);
const FieldSpec& rep_field(const PolyRep& r);
uint32_t rep_var_count(const PolyRep& r);
// An upper bound on the degree that is cheap to read off the encoding.
int rep_degree_bound(const PolyRep& r);

Matrix eval_rep(const PolyRep& r, const MatrixTuple& point);
SparsePoly expand_rep(const PolyRep& r, size_t max_terms);
Scalar rep_coefficient(const PolyRep& r, const Monomial& m);

PolyRep rep_homogeneous_part(const PolyRep& r, int j);
PolyRep rep_left_partial(const PolyRep& r, const Monomial& m);
PolyRep rep_right_partial(const PolyRep& r, const Monomial& m);
PolyRep rep_substitute_var_zero(const PolyRep& r, VarIndex v);
PolyRep rep_scale(const PolyRep& r, const Scalar& c);
PolyRep rep_with_var_count(const PolyRep& r, uint32_t new_n);
PolyRep rep_rename_positions(const PolyRep& r, int d);
PolyRep rep_unrename_positions(const PolyRep& r, uint32_t orig_n);

// ca*a + cb*b and a*b; both sides must use the same encoding.
PolyRep rep_add(const PolyRep& a, const PolyRep& b, const Scalar& ca,
                const Scalar& cb);
PolyRep rep_mul(const PolyRep& a, const PolyRep& b);

}  // namespace ncfactor
