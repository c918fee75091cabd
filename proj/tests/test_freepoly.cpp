#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace ncftest;

namespace {

SparsePoly mk(uint32_t n, const FieldSpec& f,
              std::initializer_list<std::pair<Monomial, long long>> ts) {
  SparsePoly p(n, f);
  for (const auto& [m, c] : ts) p.add_term(m, Scalar::from_int(f, c));
  return p;
}

const Monomial kUnit = Monomial::unit();

template <typename F>
std::optional<Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("products concatenate words") {
  FieldSpec f = f101();
  SparsePoly x = mk(2, f, {{Monomial{0}, 1}});
  SparsePoly yx1 = mk(2, f, {{Monomial{1, 0}, 1}, {kUnit, 1}});
  SparsePoly xy1 = mk(2, f, {{Monomial{0, 1}, 1}, {kUnit, 1}});
  SparsePoly xyx_x = mk(2, f, {{Monomial{0, 1, 0}, 1}, {Monomial{0}, 1}});

  CHECK(x * yx1 == xyx_x);
  CHECK(xy1 * x == xyx_x);
  CHECK(x * yx1 == xy1 * x);

  SparsePoly one = mk(2, f, {{kUnit, 1}});
  CHECK(xyx_x * one == xyx_x);
  CHECK(one * xyx_x == xyx_x);

  SparsePoly y = mk(2, f, {{Monomial{1}, 1}});
  CHECK(x * y != y * x);
}

TEST_CASE("coefficient reads") {
  FieldSpec f = f101();
  SparsePoly p = mk(2, f, {{Monomial{0, 1, 0}, 1}, {Monomial{0}, 1}});
  CHECK(p.coefficient(Monomial{0, 1, 0}) == Scalar::one(f));
  CHECK(p.coefficient(Monomial{1, 0}).is_zero());
  CHECK(mk(2, f, {{Monomial{0, 1}, 3}}).coefficient(Monomial{0, 1}) == Scalar::from_int(f, 3));
  CHECK(p.term_count() == 2);
}

TEST_CASE("partial derivatives") {
  FieldSpec f = f101();
  SparsePoly p = mk(2, f, {{Monomial{0, 1, 0}, 1}, {Monomial{0}, 1}});
  SparsePoly x = mk(2, f, {{Monomial{0}, 1}});

  CHECK(p.left_partial(Monomial{0, 1}) == x);
  CHECK(p.right_partial(Monomial{1, 0}) == x);
  CHECK(p.left_partial(kUnit) == p);
  CHECK(p.right_partial(kUnit) == p);
  CHECK(p.left_partial(Monomial{1}).is_zero());
}

TEST_CASE("variable support") {
  FieldSpec f = f101();
  SparsePoly p = mk(3, f, {{Monomial{0, 1}, 1}, {Monomial{0, 2}, 1}, {Monomial{1}, 1},
                           {Monomial{2}, 1}});
  CHECK(p.var_set() == std::set<VarIndex>{0, 1, 2});
  CHECK(SparsePoly::zero(3, f).var_set().empty());
  SparsePoly q = mk(3, f, {{Monomial{0, 1, 0}, 1}, {Monomial{0}, 1}});
  CHECK(q.var_set() == std::set<VarIndex>{0, 1});
  CHECK(q.depends_on(0));
  CHECK(!q.depends_on(2));
  CHECK(q.substitute_var_zero(1) == mk(3, f, {{Monomial{0}, 1}}));
  CHECK(q.substitute_var_zero(2) == q);
}

TEST_CASE("homogeneous parts and multilinearity") {
  FieldSpec f = f101();
  SparsePoly q = mk(2, f, {{Monomial{0, 1, 0}, 1}, {Monomial{0}, 1}});
  CHECK(q.homogeneous_part(3) == mk(2, f, {{Monomial{0, 1, 0}, 1}}));
  CHECK(q.homogeneous_part(2).is_zero());
  CHECK(!q.is_multilinear());
  SparsePoly ml = mk(2, f, {{Monomial{0, 1}, 1}, {Monomial{0}, 1}, {Monomial{1}, 1},
                            {kUnit, 1}});
  CHECK(ml.is_multilinear());
  CHECK(!ml.is_homogeneous());
  CHECK(mk(2, f, {{Monomial{0, 1, 0}, 1}}).is_homogeneous());
  CHECK(SparsePoly::zero(2, f).is_homogeneous());
}

TEST_CASE("leading monomial") {
  FieldSpec f = f101();
  CHECK(mk(2, f, {{Monomial{0, 1, 0}, 1}, {Monomial{0}, 1}}).max_degree_monomial_lex() ==
        Monomial({0, 1, 0}));
  // among equal-degree monomials the lexicographically least wins
  CHECK(mk(2, f, {{Monomial{1, 0}, 1}, {Monomial{0, 1}, 1}}).max_degree_monomial_lex() ==
        Monomial({0, 1}));
  CHECK(mk(2, f, {{kUnit, 5}}).max_degree_monomial_lex() == kUnit);
  CHECK(thrown_code([&] { (void)SparsePoly::zero(2, f).max_degree_monomial_lex(); }) ==
        Errc::ZeroPolynomial);
  CHECK(mk(2, f, {{Monomial{0, 1}, 7}, {Monomial{1}, 3}}).leading_coefficient() ==
        Scalar::from_int(f, 7));
}

TEST_CASE("degree") {
  FieldSpec f = f101();
  CHECK(!SparsePoly::zero(2, f).degree().has_value());
  CHECK(mk(2, f, {{kUnit, 1}}).degree() == 0);
  CHECK(mk(2, f, {{Monomial{0, 1, 0}, 1}, {Monomial{0}, 1}}).degree_or_throw() == 3);
  CHECK(thrown_code([&] { (void)SparsePoly::zero(2, f).degree_or_throw(); }) ==
        Errc::ZeroPolynomial);
}

TEST_CASE("product matches definitional convolution") {
  for (FieldSpec f : {f101(), qq()}) {
    SeededRng rng(17);
    for (int iter = 0; iter < 50; ++iter) {
      uint32_t n = 2 + uint32_t(rng.next_below(3));
      auto vars = all_vars(n);
      SparsePoly a = rand_poly(rng, n, vars, 1 + int(rng.next_below(4)), 6, f, false);
      SparsePoly b = rand_poly(rng, n, vars, 1 + int(rng.next_below(4)), 6, f, false);
      SparsePoly ab = a * b;
      for (const auto& [m, c] : ab.terms()) CHECK(c == conv_coefficient(a, b, m));
      // absent words really have zero convolution
      for (int probe = 0; probe < 5; ++probe) {
        Monomial m = rand_word(rng, vars, rng.next_below(7));
        CHECK(ab.coefficient(m) == conv_coefficient(a, b, m));
      }
    }
  }
}

TEST_CASE("variable-disjoint products split uniquely") {
  FieldSpec f = f101();
  SeededRng rng(23);
  for (int iter = 0; iter < 40; ++iter) {
    auto sets = split_vars(rng, 4 + uint32_t(rng.next_below(2)), 2);
    uint32_t n = 6;
    SparsePoly g = rand_poly(rng, n, sets[0], 1 + int(rng.next_below(3)), 4, f, false);
    SparsePoly h = rand_poly(rng, n, sets[1], 1 + int(rng.next_below(3)), 4, f, false);
    if (g.is_zero() || h.is_zero()) continue;
    SparsePoly gh = g * h;
    // every monomial of gh is a g-word followed by an h-word, with coefficient
    // equal to the product, and all such pairs occur
    CHECK(gh.term_count() == g.term_count() * h.term_count());
    for (const auto& [mg, cg] : g.terms())
      for (const auto& [mh, ch] : h.terms())
        CHECK(gh.coefficient(mg.concat(mh)) == cg * ch);
  }
}

TEST_CASE("derivatives invert multiplication by a word") {
  FieldSpec f = f101();
  SeededRng rng(31);
  for (int iter = 0; iter < 40; ++iter) {
    uint32_t n = 3;
    auto vars = all_vars(n);
    Monomial m = rand_word(rng, vars, 1 + rng.next_below(3));
    SparsePoly h = rand_poly(rng, n, vars, int(rng.next_below(3)), 4, f, false);
    SparsePoly mh(n, f);
    mh.add_term(m, Scalar::one(f));
    CHECK((mh * h).left_partial(m) == h);
    CHECK((h * mh).right_partial(m) == h);
  }
}

TEST_CASE("derivatives compose") {
  FieldSpec f = f101();
  SeededRng rng(37);
  for (int iter = 0; iter < 40; ++iter) {
    uint32_t n = 3;
    auto vars = all_vars(n);
    SparsePoly p = rand_poly(rng, n, vars, 4, 8, f, false);
    Monomial m1 = rand_word(rng, vars, 1 + rng.next_below(2));
    Monomial m2 = rand_word(rng, vars, 1 + rng.next_below(2));
    CHECK(p.left_partial(m1).left_partial(m2) == p.left_partial(m1.concat(m2)));
    CHECK(p.right_partial(m2).right_partial(m1) == p.right_partial(m1.concat(m2)));
    CHECK(p.left_partial(m1).right_partial(m2) == p.right_partial(m2).left_partial(m1));
    CHECK(p.left_partial(m1) == naive_left_partial(p, m1));
    CHECK(p.right_partial(m2) == naive_right_partial(p, m2));
  }
}

TEST_CASE("ring identities on random polynomials") {
  for (FieldSpec f : {f101(), qq()}) {
    SeededRng rng(41);
    for (int iter = 0; iter < 30; ++iter) {
      uint32_t n = 3;
      auto vars = all_vars(n);
      SparsePoly a = rand_poly(rng, n, vars, 3, 5, f, false);
      SparsePoly b = rand_poly(rng, n, vars, 3, 5, f, false);
      SparsePoly c = rand_poly(rng, n, vars, 3, 5, f, false);
      CHECK((a + b) * c == a * c + b * c);
      CHECK(c * (a + b) == c * a + c * b);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK((a - a).is_zero());
    }
  }
}

TEST_CASE("deglex term order") {
  FieldSpec f = f101();
  SparsePoly p = mk(2, f, {{Monomial{1, 0}, 1}, {kUnit, 1}, {Monomial{0, 1}, 1},
                           {Monomial{1}, 1}});
  std::vector<Monomial> seen;
  for (const auto& [m, c] : p.terms()) seen.push_back(m);
  CHECK(seen == std::vector<Monomial>{kUnit, Monomial({1}), Monomial({0, 1}),
                                      Monomial({1, 0})});
}

TEST_CASE("monomial word operations") {
  Monomial m({0, 1, 0});
  CHECK(m.degree() == 3);
  CHECK(m.prefix(2) == Monomial({0, 1}));
  CHECK(m.suffix_from(1) == Monomial({1, 0}));
  CHECK(m.subword(1, 2) == Monomial({1, 0}));
  CHECK(m.subword(1, 1) == Monomial({1}));
  CHECK(m.has_prefix(Monomial({0, 1})));
  CHECK(!m.has_prefix(Monomial({1})));
  CHECK(m.has_suffix(Monomial({1, 0})));
  CHECK(Monomial::unit().is_unit());
  CHECK(Monomial::var(2) == Monomial({2}));
  CHECK(m.to_string() == "x0*x1*x0");
  CHECK(Monomial::unit().to_string() == "1");
  CHECK(deglex_compare(Monomial({1}), Monomial({0, 1})) < 0);
  CHECK(deglex_compare(Monomial({0, 1}), Monomial({1, 0})) < 0);
  CHECK(deglex_compare(m, m) == 0);
}

TEST_CASE("positional renaming") {
  FieldSpec f = f101();
  // xyx with n=2: position j symbol v maps to j*n+v
  SparsePoly p = mk(2, f, {{Monomial{0, 1, 0}, 1}});
  SparsePoly r = p.rename_positions();
  CHECK(r.var_count() == 6);
  CHECK(r == mk(6, f, {{Monomial{0, 3, 4}, 1}}));
  CHECK(r.unrename_positions(2) == p);
  CHECK(thrown_code([&] {
          (void)mk(2, f, {{Monomial{0, 1}, 1}, {Monomial{0}, 1}}).rename_positions();
        }) == Errc::NotHomogeneous);
}
