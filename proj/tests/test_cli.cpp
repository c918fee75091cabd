#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "ncfactor/cli.hpp"
#include "ncfactor/json_io.hpp"
#include "ncfactor/parse.hpp"

using namespace ncftest;

namespace {

namespace fs = std::filesystem;

SparsePoly mk(uint32_t n, const FieldSpec& f,
              std::initializer_list<std::pair<Monomial, long long>> ts) {
  SparsePoly p(n, f);
  for (const auto& [m, c] : ts) p.add_term(m, Scalar::from_int(f, c));
  return p;
}

template <typename F>
std::optional<Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

fs::path temp_file(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "ncfactor_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json run_json(std::vector<std::string> args, const std::string& out_name, int want_exit) {
  fs::path out = temp_file(out_name);
  args.push_back("--out");
  args.push_back(out.string());
  int code = run_cli(args);
  REQUIRE(code == want_exit);
  return Json::parse(slurp(out));
}

void write_json(const fs::path& p, const Json& j) {
  std::ofstream out(p);
  out << j.dump(2) << "\n";
}

}  // namespace

TEST_CASE("expression parsing") {
  FieldSpec f = f101();
  CHECK(parse_poly("x*y*x + x", 2, f) ==
        mk(2, f, {{Monomial{0, 1, 0}, 1}, {Monomial{0}, 1}}));
  CHECK(parse_poly("(x+1)*(y+z)", 3, f) ==
        mk(3, f, {{Monomial{0, 1}, 1}, {Monomial{0, 2}, 1}, {Monomial{1}, 1},
                  {Monomial{2}, 1}}));
  CHECK(parse_poly("x*y - y*x", 2, f) ==
        mk(2, f, {{Monomial{0, 1}, 1}, {Monomial{1, 0}, -1}}));
  CHECK(parse_poly("-x + 2", 2, f) == mk(2, f, {{Monomial{0}, -1}, {Monomial::unit(), 2}}));
  CHECK(parse_poly("0", 2, f).is_zero());
  CHECK(parse_poly("3*x0*x1 - x1", 2, f) ==
        mk(2, f, {{Monomial{0, 1}, 3}, {Monomial{1}, -1}}));
  CHECK(parse_poly("w", 4, f) == mk(4, f, {{Monomial{3}, 1}}));
  CHECK(parse_poly("x7", 8, f) == mk(8, f, {{Monomial{7}, 1}}));
  SparsePoly rat(2, qq());
  rat.add_term(Monomial({0}), Scalar::rational(2, 3));
  rat.add_term(Monomial::unit(), Scalar::rational(1, 2));
  CHECK(parse_poly("2/3*x + 1/2", 2, qq()) == rat);
  // parenthesized subexpressions multiply out in order
  CHECK(parse_poly("(x+y)*(x-y)", 2, f) ==
        mk(2, f, {{Monomial{0, 0}, 1}, {Monomial{0, 1}, -1}, {Monomial{1, 0}, 1},
                  {Monomial{1, 1}, -1}}));
}

TEST_CASE("parse errors") {
  FieldSpec f = f101();
  CHECK(thrown_code([&] { (void)parse_poly("x +", 2, f); }) == Errc::SyntaxError);
  CHECK(thrown_code([&] { (void)parse_poly("(x+1", 2, f); }) == Errc::SyntaxError);
  CHECK(thrown_code([&] { (void)parse_poly("x y", 2, f); }) == Errc::SyntaxError);
  CHECK(thrown_code([&] { (void)parse_poly("", 2, f); }) == Errc::SyntaxError);
  CHECK(thrown_code([&] { (void)parse_poly("*x", 2, f); }) == Errc::SyntaxError);
  CHECK(thrown_code([&] { (void)parse_poly("q", 2, f); }) == Errc::UnknownVariable);
  CHECK(thrown_code([&] { (void)parse_poly("x9", 3, f); }) == Errc::UnknownVariable);
  // the x/y/z/w shorthand is reserved for rings with at most four variables
  CHECK(thrown_code([&] { (void)parse_poly("y", 9, f); }) == Errc::UnknownVariable);

  try {
    (void)parse_poly("x + + y", 2, f);
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("printing parses back") {
  for (FieldSpec f : {f101(), qq()}) {
    SeededRng rng(7);
    for (int iter = 0; iter < 50; ++iter) {
      uint32_t n = 1 + uint32_t(rng.next_below(4));
      SparsePoly a = rand_poly(rng, n, all_vars(n), int(rng.next_below(4)), 5, f, false);
      SparsePoly b = rand_poly(rng, n, all_vars(n), int(rng.next_below(4)), 5, f, false);
      SparsePoly p = a - b;  // mixes negative coefficients in
      CHECK(parse_poly(p.to_string(), n, f) == p);
    }
  }
  CHECK(SparsePoly::zero(2, f101()).to_string() == "0");
}

TEST_CASE("sparse json round trip") {
  for (FieldSpec f : {f101(), qq()}) {
    SeededRng rng(13);
    for (int iter = 0; iter < 20; ++iter) {
      uint32_t n = 1 + uint32_t(rng.next_below(4));
      SparsePoly a = rand_poly(rng, n, all_vars(n), int(rng.next_below(4)), 5, f, false);
      SparsePoly b = rand_poly(rng, n, all_vars(n), int(rng.next_below(4)), 5, f, false);
      SparsePoly p = a - b;
      Json j = sparse_to_json(p);
      CHECK(sparse_from_json(j) == p);
      CHECK(sparse_to_json(sparse_from_json(j)).dump() == j.dump());
    }
  }
}

TEST_CASE("abp and circuit json round trips") {
  FieldSpec f = f101();
  SeededRng rng(19);
  for (int iter = 0; iter < 20; ++iter) {
    uint32_t n = 2 + uint32_t(rng.next_below(2));
    Abp a = rand_abp(rng, n, f);
    Json ja = abp_to_json(a);
    Abp back = abp_from_json(ja);
    CHECK(back.layer_sizes() == a.layer_sizes());
    CHECK(expand_rep(PolyRep(back), 100000) == expand_rep(PolyRep(a), 100000));
    CHECK(abp_to_json(back).dump() == ja.dump());

    Circuit c = rand_circuit(rng, n, f, 4);
    Json jc = circuit_to_json(c);
    Circuit cback = circuit_from_json(jc);
    CHECK(expand_rep(PolyRep(cback), 100000) == expand_rep(PolyRep(c), 100000));
    CHECK(circuit_to_json(cback).dump() == jc.dump());
  }
}

TEST_CASE("tagged rep json dispatch") {
  FieldSpec f = f101();
  SparsePoly p = mk(2, f, {{Monomial{0, 1}, 1}, {Monomial::unit(), 4}});
  for (PolyRep r : {PolyRep(p), PolyRep(Abp::from_sparse(p)), PolyRep(Circuit::from_sparse(p))}) {
    Json j = rep_to_json(r);
    PolyRep back = rep_from_json(j);
    CHECK(rep_kind(back) == rep_kind(r));
    CHECK(expand_rep(back, 1000) == p);
    CHECK(rep_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("tensor json round trip") {
  Tensor3 t = Tensor3::zeros(2, qq());
  t.at(0, 0, 0) = Scalar::rational(1, 2);
  t.at(1, 0, 1) = Scalar::from_int(qq(), -3);
  Json j = tensor_to_json(t);
  Tensor3 back = tensor_from_json(j);
  CHECK(back.n == 2);
  CHECK(back.at(0, 0, 0) == Scalar::rational(1, 2));
  CHECK(back.at(1, 0, 1) == Scalar::from_int(qq(), -3));
  CHECK(tensor_to_json(back).dump() == j.dump());
}

TEST_CASE("vd command") {
  Json out = run_json({"vd", "--expr", "(x+1)*(y+z)", "--n", "3", "--field", "fp:101"},
                      "vd.json", 0);
  CHECK(out["overall_scalar"] == "1");
  CHECK(out["factor_count"] == 2);
  CHECK(out["factors"][0]["text"] == "1 + x0");
  CHECK(out["factors"][1]["text"] == "x1 + x2");
  CHECK(out["strategy"] == "sequential");

  Json rng_out = run_json({"vd", "--expr", "(x+1)*(y+z)", "--n", "3", "--field", "fp:101",
                           "--strategy", "range"},
                          "vd_range.json", 0);
  CHECK(rng_out["factor_count"] == 2);
  CHECK(rng_out["factors"][0]["text"] == out["factors"][0]["text"]);
  CHECK(rng_out["strategy"] == "range");

  // the range strategy needs an explicit polynomial
  fs::path sink = temp_file("unused.json");
  CHECK(run_cli({"vd", "--expr", "x*y", "--n", "2", "--rep", "abp", "--strategy", "range",
                 "--out", sink.string()}) == 2);
}

TEST_CASE("pit command") {
  fs::path sink = temp_file("pit_sink.json");
  CHECK(run_cli({"pit", "--expr", "x*y - x*y", "--n", "2", "--out", sink.string()}) == 0);
  CHECK(run_cli({"pit", "--expr", "x*y - y*x", "--n", "2", "--out", sink.string()}) == 1);

  Json abp_zero = run_json({"pit", "--expr", "x*y - x*y", "--n", "2", "--rep", "abp"},
                           "pit_abp.json", 0);
  CHECK(abp_zero["method"] == "deterministic");
  CHECK(abp_zero["verdict"] == "zero");

  Json circ = run_json({"pit", "--expr", "x*y - y*x", "--n", "2", "--rep", "circuit",
                        "--seed", "3"},
                       "pit_circ.json", 1);
  CHECK(circ["method"] == "randomized");
  CHECK(circ["verdict"] == "nonzero");
  CHECK(circ["seed"] == 3);

  // randomized testing refuses the tiny default-unsafe field
  CHECK(run_cli({"pit", "--expr", "x*y - y*x", "--n", "2", "--rep", "circuit", "--field",
                 "fp:101", "--out", sink.string()}) == 2);
}

TEST_CASE("factor commands") {
  Json hom = run_json({"factor-homogeneous", "--expr", "x*y*x", "--n", "2"}, "hom.json", 0);
  CHECK(hom["factor_count"] == 3);
  CHECK(hom["factors"][0]["text"] == "x0");
  CHECK(hom["factors"][1]["text"] == "x1");
  CHECK(hom["factors"][2]["text"] == "x0");

  Json ml = run_json({"factor-multilinear", "--expr", "x*y + x + y + 1", "--n", "2"},
                     "ml.json", 0);
  CHECK(ml["factor_count"] == 2);
  CHECK(ml["factors"][0]["text"] == "1 + x0");
  CHECK(ml["factors"][1]["text"] == "1 + x1");

  fs::path sink = temp_file("factor_sink.json");
  CHECK(run_cli({"factor-homogeneous", "--expr", "x*y + x", "--n", "2", "--out",
                 sink.string()}) == 2);
}

TEST_CASE("sop command") {
  Json rank2 = run_json({"sop", "--expr", "x0*x2 + x1*x3", "--n", "4", "--d1", "1",
                         "--field", "fp:101", "--k", "1"},
                        "sop2.json", 0);
  CHECK(rank2["rank"] == 2);
  CHECK(rank2["pairs"].size() == 2);
  REQUIRE(rank2.contains("certificate"));
  CHECK(rank2["certificate"]["k"] == 1);
  CHECK(rank2["certificate"]["rows"].size() == 2);

  Json rank1 = run_json({"sop", "--expr", "x*y + x*z", "--n", "3", "--d1", "1", "--field",
                         "qq"},
                        "sop1.json", 0);
  CHECK(rank1["rank"] == 1);
  CHECK(rank1["pairs"][0]["g_text"] == "x0");
  CHECK(rank1["pairs"][0]["h_text"] == "x1 + x2");

  // abp inputs report the rank only
  Json viaabp = run_json({"sop", "--expr", "x0*x2 + x1*x3", "--n", "4", "--d1", "1",
                          "--field", "fp:101", "--rep", "abp"},
                         "sopabp.json", 0);
  CHECK(viaabp["rank"] == 2);
  CHECK(!viaabp.contains("pairs"));
}

TEST_CASE("encode-tensor command") {
  Tensor3 t = Tensor3::zeros(2, FieldSpec::prime_field(2));
  t.at(0, 0, 0) = Scalar::one(t.field);
  t.at(1, 1, 1) = Scalar::one(t.field);
  fs::path in = temp_file("tensor_in.json");
  write_json(in, tensor_to_json(t));
  Json out = run_json({"encode-tensor", "--in", in.string()}, "tensor_out.json", 0);
  SparsePoly enc = sparse_from_json(out);
  CHECK(enc.var_count() == 6);
  CHECK(enc.term_count() == 2);
  CHECK(enc.coefficient(Monomial({0, 2, 4})) == Scalar::one(t.field));
  CHECK(enc.coefficient(Monomial({1, 3, 5})) == Scalar::one(t.field));
}

TEST_CASE("blackbox demo command") {
  Json out = run_json({"blackbox-demo", "--expr", "(x+1)*(y+z)", "--n", "3", "--seed", "7"},
                      "bb.json", 0);
  CHECK(out["crosscheck"] == "ok");
  CHECK(out["factor_count"] == 2);
  CHECK(out["degree"] == 2);
  CHECK(out["monomial"] == Json::array({0, 1}));
  CHECK(out["degree_probes"] == 1);
  CHECK(out["extension_probes"].get<uint64_t>() <= 3 * 2);
  CHECK(out["max_probe_dim"].get<uint64_t>() <= (2 + 1) * 2 * 2);
}

TEST_CASE("file input and conversion") {
  FieldSpec f = f101();
  SparsePoly p = mk(3, f, {{Monomial{0, 1}, 1}, {Monomial{0, 2}, 1}, {Monomial{1}, 1},
                           {Monomial{2}, 1}});
  fs::path in = temp_file("poly_in.json");
  write_json(in, rep_to_json(PolyRep(p)));
  Json out = run_json({"vd", "--in", in.string()}, "vd_file.json", 0);
  CHECK(out["factor_count"] == 2);

  // a tagged abp payload is read as an abp
  fs::path in_abp = temp_file("abp_in.json");
  write_json(in_abp, rep_to_json(PolyRep(Abp::from_sparse(p))));
  Json pout = run_json({"pit", "--in", in_abp.string()}, "pit_file.json", 1);
  CHECK(pout["method"] == "deterministic");

  // --rep converts sparse file input on the way in
  Json conv = run_json({"pit", "--in", in.string(), "--rep", "abp"}, "pit_conv.json", 1);
  CHECK(conv["method"] == "deterministic");
}

TEST_CASE("usage errors") {
  fs::path sink = temp_file("err_sink.json");
  CHECK(run_cli({"vd", "--out", sink.string()}) == 2);  // no input
  CHECK(run_cli({"vd", "--expr", "q + 1", "--n", "2", "--out", sink.string()}) == 2);
  CHECK(run_cli({"vd", "--expr", "x*y", "--n", "2", "--rep", "bogus",
                 "--out", sink.string()}) == 2);
  CHECK(run_cli({"no-such-command"}) == 2);
  CHECK(run_cli({"vd", "--expr", "0", "--n", "2", "--out", sink.string()}) == 2);
  CHECK(run_cli({"sop", "--expr", "x*y + x", "--n", "2", "--d1", "1", "--out",
                 sink.string()}) == 2);
  CHECK(run_cli({"vd", "--in", (temp_file("missing_dir") / "nope.json").string(),
                 "--out", sink.string()}) == 2);
}

TEST_CASE("seeded runs are byte reproducible") {
  fs::path a = temp_file("rep_a.json");
  fs::path b = temp_file("rep_b.json");
  std::vector<std::string> base{"blackbox-demo", "--expr", "(x+1)*(y+z)", "--n", "3",
                                "--seed", "11"};
  std::vector<std::string> ra = base, rb = base;
  ra.push_back("--out");
  ra.push_back(a.string());
  rb.push_back("--out");
  rb.push_back(b.string());
  REQUIRE(run_cli(ra) == 0);
  REQUIRE(run_cli(rb) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}
