#include "ncfactor/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ncfactor/blackbox.hpp"
#include "ncfactor/errors.hpp"
#include "ncfactor/json_io.hpp"
#include "ncfactor/parse.hpp"
#include "ncfactor/pit.hpp"
#include "ncfactor/sop.hpp"
#include "ncfactor/vdfact.hpp"

namespace ncfactor {

namespace {

struct CommonOpts {
  std::string in;
  std::string expr;
  std::string rep = "sparse";
  bool rep_given = false;
  std::string field = "fp:2305843009213693951";
  std::string out;
  uint32_t n = 4;
  uint64_t seed = 0;
  int trials = 20;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool takes_rep = true) {
  auto* in = cmd->add_option("--in", o.in, "input JSON file");
  auto* expr = cmd->add_option("--expr", o.expr, "inline expression");
  in->excludes(expr);
  expr->excludes(in);
  if (takes_rep)
    cmd->add_option("--rep", o.rep, "representation to work in")
        ->check(CLI::IsMember({"sparse", "abp", "circuit"}))
        ->each([&o](const std::string&) { o.rep_given = true; });
  cmd->add_option("--field", o.field, "fp:<prime> or qq");
  cmd->add_option("--n", o.n, "variable count for --expr");
  cmd->add_option("--seed", o.seed, "randomness seed");
  cmd->add_option("--trials", o.trials, "randomized PIT trials");
  cmd->add_option("--out", o.out, "write the JSON output here instead of stdout");
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), Errc::InvalidArgument, "cannot open " + path);
  try {
    Json j;
    f >> j;
    return j;
  } catch (const std::exception& e) {
    fail(Errc::SyntaxError, "bad JSON in " + path + ": " + e.what());
  }
}

PolyRep to_rep(const SparsePoly& f, const std::string& rep) {
  if (rep == "abp") return Abp::from_sparse(f);
  if (rep == "circuit") return Circuit::from_sparse(f);
  return f;
}

PolyRep load_poly(const CommonOpts& o) {
  if (!o.expr.empty()) {
    FieldSpec field = FieldSpec::parse(o.field);
    return to_rep(parse_poly(o.expr, o.n, field), o.rep);
  }
  require(!o.in.empty(), Errc::InvalidArgument, "one of --in or --expr is required");
  PolyRep r = rep_from_json(read_json_file(o.in));
  if (o.rep_given && o.rep != rep_kind_name(rep_kind(r))) {
    require(rep_kind(r) == RepKind::Sparse, Errc::InvalidArgument,
            "only sparse inputs convert to another representation");
    return to_rep(std::get<SparsePoly>(r), o.rep);
  }
  return r;
}

void emit(const CommonOpts& o, const Json& j) {
  std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    require(f.good(), Errc::InvalidArgument, "cannot write " + o.out);
    f << text;
  }
}

PitParams pit_params(const CommonOpts& o) {
  PitParams p;
  p.seed = o.seed;
  p.trials = o.trials;
  return p;
}

int cmd_pit(const CommonOpts& o) {
  PolyRep f = load_poly(o);
  Json report;
  bool zero = false;
  switch (rep_kind(f)) {
    case RepKind::Sparse: {
      zero = std::get<SparsePoly>(f).is_zero();
      report = Json{{"verdict", zero ? "zero" : "nonzero"},
                    {"method", "direct"},
                    {"trials_used", 0}};
      break;
    }
    case RepKind::Abp: {
      PitVerdict v = pit_abp_deterministic(std::get<Abp>(f));
      zero = v.is_zero;
      report = Json{{"verdict", zero ? "zero" : "nonzero"},
                    {"method", "deterministic"},
                    {"trials_used", v.trials_used}};
      if (v.witness_monomial) report["witness_monomial"] = v.witness_monomial->word;
      break;
    }
    case RepKind::Circuit: {
      PitVerdict v = pit_randomized(f, pit_params(o));
      zero = v.is_zero;
      report = Json{{"verdict", zero ? "zero" : "nonzero"},
                    {"method", "randomized"},
                    {"trials_used", v.trials_used},
                    {"seed", o.seed}};
      break;
    }
  }
  emit(o, report);
  return zero ? 0 : 1;
}

Json factorization_json(const VdFactorization& r) {
  Json factors = Json::array();
  for (size_t i = 0; i < r.factors.size(); ++i) {
    Json entry = Json::object();
    entry["leading_monomial"] = r.leading_monomials[i].word;
    if (i < r.var_partition.size()) {
      std::vector<VarIndex> vars(r.var_partition[i].begin(), r.var_partition[i].end());
      entry["variables"] = vars;
    }
    if (i < r.sparse_views.size() && r.sparse_views[i])
      entry["text"] = r.sparse_views[i]->to_string();
    entry["poly"] = rep_to_json(r.factors[i]);
    factors.push_back(std::move(entry));
  }
  return Json{{"overall_scalar", r.overall_scalar.to_string()},
              {"factor_count", r.factors.size()},
              {"factors", std::move(factors)}};
}

int cmd_vd(const CommonOpts& o, const std::string& strategy) {
  PolyRep f = load_poly(o);
  VdFactorization r;
  if (strategy == "range") {
    require(rep_kind(f) == RepKind::Sparse, Errc::InvalidArgument,
            "the range strategy runs on sparse inputs only");
    r = vd_factorize_sparse_range(std::get<SparsePoly>(f));
  } else {
    VdOptions opts;
    opts.pit = pit_params(o);
    r = vd_factorize(f, opts);
  }
  Json out = factorization_json(r);
  out["strategy"] = strategy;
  emit(o, out);
  return 0;
}

int cmd_factor(const CommonOpts& o, bool homogeneous) {
  PolyRep f = load_poly(o);
  VdOptions opts;
  opts.pit = pit_params(o);
  VdFactorization r =
      homogeneous ? factorize_homogeneous(f, opts) : factorize_multilinear(f, opts);
  emit(o, factorization_json(r));
  return 0;
}

int cmd_sop(const CommonOpts& o, int d1, int k) {
  PolyRep f = load_poly(o);
  Json out;
  if (rep_kind(f) == RepKind::Abp) {
    out = Json{{"d1", d1}, {"rank", sop_rank_abp(std::get<Abp>(f), d1)}};
    emit(o, out);
    return 0;
  }
  require(rep_kind(f) == RepKind::Sparse, Errc::InvalidArgument,
          "sop runs on sparse or abp inputs");
  const SparsePoly& s = std::get<SparsePoly>(f);
  SopDecomposition dec = sop_decompose(s, d1);
  Json pairs = Json::array();
  for (const auto& [g, h] : dec.pairs)
    pairs.push_back(Json{{"g", sparse_to_json(g)},
                         {"h", sparse_to_json(h)},
                         {"g_text", g.to_string()},
                         {"h_text", h.to_string()}});
  out = Json{{"d1", d1}, {"rank", dec.k}, {"pairs", std::move(pairs)}};
  if (k >= 0 && dec.k > size_t(k)) {
    auto cert = find_rank_certificate(s, d1, size_t(k));
    // rank > k guarantees a witness minor among the occurring monomials
    Json rows = Json::array(), cols = Json::array();
    for (const Monomial& m : cert->first) rows.push_back(m.word);
    for (const Monomial& m : cert->second) cols.push_back(m.word);
    out["certificate"] =
        Json{{"k", k}, {"rows", std::move(rows)}, {"cols", std::move(cols)}};
  }
  emit(o, out);
  return 0;
}

int cmd_blackbox_demo(const CommonOpts& o) {
  PolyRep f = load_poly(o);
  BlackBox box = wrap_rep(f);
  SeededRng rng(o.seed);
  BbFactorization r = bb_vd_factorize(box, rng);
  VdOptions opts;
  opts.pit = pit_params(o);
  VdFactorization w = vd_factorize(f, opts);
  bool ok = w.factors.size() == r.factors.size() &&
            w.overall_scalar == r.overall_scalar;
  SeededRng check_rng = SeededRng(o.seed).derive(0x63686b);
  for (size_t i = 0; ok && i < r.factors.size(); ++i) {
    const BlackBox& fo = r.factors[i];
    std::optional<uint64_t> range;
    if (fo.field().is_rationals()) range = uint64_t(1) << 20;
    size_t t = std::max<size_t>(2 * size_t(std::max(fo.degree_bound(), 0)), 1);
    for (int trial = 0; ok && trial < 10; ++trial) {
      MatrixTuple pt =
          MatrixTuple::random(fo.var_count(), t, fo.field(), check_rng, range);
      PolyRep wf = rep_with_var_count(w.factors[i], fo.var_count());
      if (!(fo.query(pt) == eval_rep(wf, pt))) ok = false;
    }
  }
  Json splits = Json::array();
  for (const Monomial& m : r.leading_monomials) splits.push_back(m.word);
  Json out{{"monomial", r.probe.monomial.word},
           {"degree", r.probe.degree},
           {"coefficient", r.probe.coefficient.to_string()},
           {"factor_count", r.factors.size()},
           {"splits", std::move(splits)},
           {"degree_probes", r.probe.degree_probes},
           {"extension_probes", r.probe.extension_probes},
           {"max_probe_dim", r.probe.max_probe_dim},
           {"root_queries", box.log()->calls.load()},
           {"max_query_dim", box.log()->max_dim.load()},
           {"crosscheck", ok ? "ok" : "mismatch"},
           {"seed", o.seed}};
  emit(o, out);
  return ok ? 0 : 3;
}

int cmd_encode_tensor(const CommonOpts& o) {
  require(!o.in.empty(), Errc::InvalidArgument, "encode-tensor needs --in tensor.json");
  Tensor3 t = tensor_from_json(read_json_file(o.in));
  emit(o, sparse_to_json(encode_tensor(t)));
  return 0;
}

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::PitFailure:
    case Errc::NotFound:
    case Errc::BudgetExceeded:
    case Errc::SearchBudgetExceeded:
    case Errc::TermBudgetExceeded:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"factoring in the free noncommutative ring F<x0,...,x_{n-1}>"};
  app.require_subcommand(1);

  CommonOpts pit_o, vd_o, fh_o, fm_o, sop_o, bb_o, enc_o;
  std::string strategy = "sequential";
  int d1 = 1, cert_k = -1;

  add_common(app.add_subcommand("pit", "test whether the input is the zero polynomial"),
             pit_o);
  auto* vd = app.add_subcommand("vd", "variable-disjoint factorization");
  add_common(vd, vd_o);
  vd->add_option("--strategy", strategy, "sequential or range")
      ->check(CLI::IsMember({"sequential", "range"}));
  add_common(app.add_subcommand("factor-homogeneous",
                                "complete factorization of a homogeneous input"),
             fh_o);
  add_common(app.add_subcommand("factor-multilinear",
                                "complete factorization of a multilinear input"),
             fm_o);
  auto* sop = app.add_subcommand("sop", "sum-of-products rank and decomposition");
  add_common(sop, sop_o);
  sop->add_option("--d1", d1, "left factor degree")->required();
  sop->add_option("--k", cert_k, "emit a rank certificate when rank exceeds k");
  add_common(app.add_subcommand("blackbox-demo",
                                "factor through matrix-evaluation queries only"),
             bb_o);
  add_common(app.add_subcommand("encode-tensor",
                                "encode an n*n*n tensor as a cubic polynomial"),
             enc_o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  uint64_t seed = 0;
  try {
    if (app.got_subcommand("pit")) {
      seed = pit_o.seed;
      return cmd_pit(pit_o);
    }
    if (app.got_subcommand("vd")) {
      seed = vd_o.seed;
      return cmd_vd(vd_o, strategy);
    }
    if (app.got_subcommand("factor-homogeneous")) {
      seed = fh_o.seed;
      return cmd_factor(fh_o, true);
    }
    if (app.got_subcommand("factor-multilinear")) {
      seed = fm_o.seed;
      return cmd_factor(fm_o, false);
    }
    if (app.got_subcommand("sop")) {
      seed = sop_o.seed;
      return cmd_sop(sop_o, d1, cert_k);
    }
    if (app.got_subcommand("blackbox-demo")) {
      seed = bb_o.seed;
      return cmd_blackbox_demo(bb_o);
    }
    if (app.got_subcommand("encode-tensor")) return cmd_encode_tensor(enc_o);
  } catch (const Error& e) {
    std::cerr << e.what() << " (seed " << seed << ")\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("ncfactor");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(int(argv.size()), argv.data());
}

}  // namespace ncfactor
