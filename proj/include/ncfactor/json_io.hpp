#pragma once

#include <json.hpp>

#include "ncfactor/abp.hpp"
#include "ncfactor/circuit.hpp"
#include "ncfactor/rep.hpp"
#include "ncfactor/sop.hpp"

namespace ncfactor {

// Key order is part of the format: serializations are byte-stable and
// round-trip exactly.
using Json = nlohmann::ordered_json;

// {"field":"fp:101","n":3,"terms":[{"coef":"3","word":[0,1,0]},...]}
Json sparse_to_json(const SparsePoly& f);
SparsePoly sparse_from_json(const Json& j);

// {"field":...,"n":...,"layers":[1,w,...,1],
//  "edges":[[{"src":0,"dst":0,"form":{"c0":"1","coeffs":{"0":"1"}}},...],...]}
Json abp_to_json(const Abp& a);
Abp abp_from_json(const Json& j);

// {"field":...,"n":...,"degree_bound":...,"gates":[...],"output":k} with
// gates {"op":"input","var":v} | {"op":"const","value":"c"} |
// {"op":"add","terms":[{"coef":"c","gate":g},...]} | {"op":"mul","lhs":a,"rhs":b};
// references are gate list indices.
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

// Any representation, tagged: {"rep":"sparse"|"abp"|"circuit", ...payload}.
Json rep_to_json(const PolyRep& r);
PolyRep rep_from_json(const Json& j);

// {"field":...,"n":2,"entries":[[["a","b"],...],...]} (entries[i][j][k])
Json tensor_to_json(const Tensor3& t);
Tensor3 tensor_from_json(const Json& j);

}  // namespace ncfactor
