#include "ncfactor/json_io.hpp"

#include "ncfactor/errors.hpp"

namespace ncfactor {

namespace {

FieldSpec field_of(const Json& j) {
  require(j.contains("field") && j["field"].is_string(), Errc::SyntaxError,
          "missing or non-string \"field\"");
  return FieldSpec::parse(j["field"].get<std::string>());
}

uint32_t n_of(const Json& j) {
  require(j.contains("n") && j["n"].is_number_unsigned(), Errc::SyntaxError,
          "missing or invalid \"n\"");
  return j["n"].get<uint32_t>();
}

Monomial word_of(const Json& j, uint32_t n) {
  require(j.is_array(), Errc::SyntaxError, "a word must be an array of indices");
  std::vector<VarIndex> w;
  for (const Json& e : j) {
    require(e.is_number_unsigned(), Errc::SyntaxError, "word entries are indices");
    VarIndex v = e.get<VarIndex>();
    require(v < n, Errc::UnknownVariable,
            "index " + std::to_string(v) + " with only " + std::to_string(n) +
                " variables");
    w.push_back(v);
  }
  return Monomial(std::move(w));
}

std::string scalar_of(const Json& j) {
  require(j.is_string(), Errc::SyntaxError, "coefficients are strings");
  return j.get<std::string>();
}

}  // namespace

Json sparse_to_json(const SparsePoly& f) {
  Json terms = Json::array();
  for (const auto& [m, c] : f.terms())
    terms.push_back(Json{{"coef", c.to_string()}, {"word", m.word}});
  return Json{{"field", f.field().to_string()},
              {"n", f.var_count()},
              {"terms", std::move(terms)}};
}

SparsePoly sparse_from_json(const Json& j) {
  FieldSpec field = field_of(j);
  uint32_t n = n_of(j);
  require(j.contains("terms") && j["terms"].is_array(), Errc::SyntaxError,
          "missing \"terms\" array");
  SparsePoly f(n, field);
  for (const Json& t : j["terms"]) {
    require(t.contains("coef") && t.contains("word"), Errc::SyntaxError,
            "a term needs \"coef\" and \"word\"");
    f.add_term(word_of(t["word"], n), Scalar::from_string(field, scalar_of(t["coef"])));
  }
  return f;
}

Json abp_to_json(const Abp& a) {
  Json gaps = Json::array();
  for (size_t l = 0; l < a.depth(); ++l) {
    Json es = Json::array();
    for (const auto& [src, dst, form] : a.edges(l)) {
      Json coeffs = Json::object();
      for (const auto& [v, c] : form.coeffs) coeffs[std::to_string(v)] = c.to_string();
      es.push_back(Json{{"src", src},
                        {"dst", dst},
                        {"form", Json{{"c0", form.c0.to_string()},
                                      {"coeffs", std::move(coeffs)}}}});
    }
    gaps.push_back(std::move(es));
  }
  return Json{{"field", a.field().to_string()},
              {"n", a.var_count()},
              {"layers", a.layer_sizes()},
              {"edges", std::move(gaps)}};
}

Abp abp_from_json(const Json& j) {
  FieldSpec field = field_of(j);
  uint32_t n = n_of(j);
  require(j.contains("layers") && j["layers"].is_array(), Errc::SyntaxError,
          "missing \"layers\" array");
  std::vector<uint32_t> layers;
  for (const Json& s : j["layers"]) {
    require(s.is_number_unsigned(), Errc::SyntaxError, "layer sizes are counts");
    layers.push_back(s.get<uint32_t>());
  }
  Abp a(n, field, layers);
  require(j.contains("edges") && j["edges"].is_array() &&
              j["edges"].size() == a.depth(),
          Errc::SyntaxError, "\"edges\" needs one array per layer gap");
  for (size_t l = 0; l < a.depth(); ++l) {
    for (const Json& e : j["edges"][l]) {
      require(e.contains("src") && e.contains("dst") && e.contains("form"),
              Errc::SyntaxError, "an edge needs \"src\", \"dst\", \"form\"");
      const Json& fj = e["form"];
      AffineForm form = AffineForm::zero(field);
      if (fj.contains("c0")) form.c0 = Scalar::from_string(field, scalar_of(fj["c0"]));
      if (fj.contains("coeffs"))
        for (const auto& [key, val] : fj["coeffs"].items()) {
          unsigned long v = std::stoul(key);
          require(v < n, Errc::UnknownVariable,
                  "index " + key + " with only " + std::to_string(n) + " variables");
          form.add_coeff(VarIndex(v), Scalar::from_string(field, scalar_of(val)));
        }
      a.add_edge(l, e["src"].get<uint32_t>(), e["dst"].get<uint32_t>(), std::move(form));
    }
  }
  return a;
}

Json circuit_to_json(const Circuit& c) {
  Json gates = Json::array();
  for (const Circuit::Gate& g : c.gates()) {
    switch (g.op) {
      case Circuit::Op::Input:
        gates.push_back(Json{{"op", "input"}, {"var", g.var}});
        break;
      case Circuit::Op::Const:
        gates.push_back(Json{{"op", "const"}, {"value", g.value.to_string()}});
        break;
      case Circuit::Op::Add: {
        Json terms = Json::array();
        for (const auto& [w, gi] : g.addends)
          terms.push_back(Json{{"coef", w.to_string()}, {"gate", gi}});
        gates.push_back(Json{{"op", "add"}, {"terms", std::move(terms)}});
        break;
      }
      case Circuit::Op::Mul:
        gates.push_back(Json{{"op", "mul"}, {"lhs", g.lhs}, {"rhs", g.rhs}});
        break;
    }
  }
  return Json{{"field", c.field().to_string()},
              {"n", c.var_count()},
              {"degree_bound", c.degree_bound()},
              {"gates", std::move(gates)},
              {"output", c.output()}};
}

Circuit circuit_from_json(const Json& j) {
  FieldSpec field = field_of(j);
  uint32_t n = n_of(j);
  require(j.contains("degree_bound") && j["degree_bound"].is_number(),
          Errc::SyntaxError, "missing \"degree_bound\"");
  Circuit c(n, field, j["degree_bound"].get<int>());
  require(j.contains("gates") && j["gates"].is_array(), Errc::SyntaxError,
          "missing \"gates\" array");
  for (const Json& g : j["gates"]) {
    require(g.contains("op") && g["op"].is_string(), Errc::SyntaxError,
            "a gate needs an \"op\"");
    std::string op = g["op"].get<std::string>();
    if (op == "input") {
      VarIndex v = g.at("var").get<VarIndex>();
      require(v < n, Errc::UnknownVariable,
              "index " + std::to_string(v) + " with only " + std::to_string(n) +
                  " variables");
      c.add_input(v);
    } else if (op == "const") {
      c.add_const(Scalar::from_string(field, scalar_of(g.at("value"))));
    } else if (op == "add") {
      std::vector<std::pair<Scalar, uint32_t>> addends;
      for (const Json& t : g.at("terms"))
        addends.emplace_back(Scalar::from_string(field, scalar_of(t.at("coef"))),
                             t.at("gate").get<uint32_t>());
      c.add_add(std::move(addends));
    } else if (op == "mul") {
      c.add_mul(g.at("lhs").get<uint32_t>(), g.at("rhs").get<uint32_t>());
    } else {
      fail(Errc::SyntaxError, "unknown gate op \"" + op + "\"");
    }
  }
  require(j.contains("output"), Errc::SyntaxError, "missing \"output\"");
  c.set_output(j["output"].get<uint32_t>());
  return c;
}

Json rep_to_json(const PolyRep& r) {
  Json out;
  switch (rep_kind(r)) {
    case RepKind::Sparse:
      out = sparse_to_json(std::get<SparsePoly>(r));
      out["rep"] = "sparse";
      break;
    case RepKind::Abp:
      out = abp_to_json(std::get<Abp>(r));
      out["rep"] = "abp";
      break;
    case RepKind::Circuit:
      out = circuit_to_json(std::get<Circuit>(r));
      out["rep"] = "circuit";
      break;
  }
  return out;
}

PolyRep rep_from_json(const Json& j) {
  std::string kind = "sparse";
  if (j.contains("rep"))
    kind = j["rep"].get<std::string>();
  else if (j.contains("layers"))
    kind = "abp";
  else if (j.contains("gates"))
    kind = "circuit";
  if (kind == "sparse") return sparse_from_json(j);
  if (kind == "abp") return abp_from_json(j);
  if (kind == "circuit") return circuit_from_json(j);
  fail(Errc::SyntaxError, "unknown representation \"" + kind + "\"");
}

Json tensor_to_json(const Tensor3& t) {
  Json rows = Json::array();
  for (uint32_t i = 0; i < t.n; ++i) {
    Json plane = Json::array();
    for (uint32_t j = 0; j < t.n; ++j) {
      Json line = Json::array();
      for (uint32_t k = 0; k < t.n; ++k) line.push_back(t.at(i, j, k).to_string());
      plane.push_back(std::move(line));
    }
    rows.push_back(std::move(plane));
  }
  return Json{{"field", t.field.to_string()}, {"n", t.n}, {"entries", std::move(rows)}};
}

Tensor3 tensor_from_json(const Json& j) {
  FieldSpec field = field_of(j);
  uint32_t n = n_of(j);
  Tensor3 t = Tensor3::zeros(n, field);
  require(j.contains("entries") && j["entries"].is_array() && j["entries"].size() == n,
          Errc::SyntaxError, "\"entries\" must be an n*n*n array");
  for (uint32_t i = 0; i < n; ++i) {
    const Json& plane = j["entries"][i];
    require(plane.is_array() && plane.size() == n, Errc::SyntaxError,
            "\"entries\" must be an n*n*n array");
    for (uint32_t jj = 0; jj < n; ++jj) {
      const Json& line = plane[jj];
      require(line.is_array() && line.size() == n, Errc::SyntaxError,
              "\"entries\" must be an n*n*n array");
      for (uint32_t k = 0; k < n; ++k)
        t.at(i, jj, k) = Scalar::from_string(field, scalar_of(line[k]));
    }
  }
  return t;
}

}  // namespace ncfactor
