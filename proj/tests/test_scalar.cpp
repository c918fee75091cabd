#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace ncftest;

namespace {

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

TEST_CASE("prime field arithmetic") {
  FieldSpec f = f101();
  CHECK(Scalar::from_int(f, 50) + Scalar::from_int(f, 60) == Scalar::from_int(f, 9));
  CHECK(Scalar::from_int(f, 2).inverse() == Scalar::from_int(f, 51));
  CHECK(Scalar::from_int(f, 2) * Scalar::from_int(f, 51) == Scalar::one(f));
  CHECK(Scalar::from_int(f, -1) == Scalar::from_int(f, 100));
  CHECK((Scalar::from_int(f, 7) - Scalar::from_int(f, 7)).is_zero());
}

TEST_CASE("rational arithmetic") {
  FieldSpec f = qq();
  CHECK(Scalar::rational(2, 3) * Scalar::rational(3, 4) == Scalar::rational(1, 2));
  CHECK(Scalar::rational(1, 2) + Scalar::rational(1, 3) == Scalar::rational(5, 6));
  CHECK(Scalar::rational(7, 3).inverse() == Scalar::rational(3, 7));
  CHECK(Scalar::from_int(f, 4) / Scalar::from_int(f, 6) == Scalar::rational(2, 3));
}

TEST_CASE("rational canonical form") {
  CHECK(Scalar::rational(4, 6).to_string() == "2/3");
  CHECK(Scalar::rational(-4, 6).to_string() == "-2/3");
  CHECK(Scalar::rational(6, 3).to_string() == "2");
  CHECK(Scalar::rational(0, 5).is_zero());
  // denominator stays positive
  CHECK((Scalar::rational(1, 2) / Scalar::rational(-1, 3)).to_string() == "-3/2");
}

TEST_CASE("division by zero") {
  for (FieldSpec f : {f101(), qq()}) {
    CHECK(thrown_code([&] { (void)Scalar::zero(f).inverse(); }) == Errc::DivisionByZero);
    CHECK(thrown_code([&] { (void)(Scalar::one(f) / Scalar::zero(f)); }) ==
          Errc::DivisionByZero);
  }
}

TEST_CASE("from_string round trip") {
  CHECK(Scalar::from_string(f101(), "100") == Scalar::from_int(f101(), -1));
  CHECK(Scalar::from_string(qq(), "2/3") == Scalar::rational(2, 3));
  CHECK(Scalar::from_string(qq(), "-5") == Scalar::from_int(qq(), -5));
  for (FieldSpec f : {f101(), qq()}) {
    SeededRng rng(11);
    for (int i = 0; i < 50; ++i) {
      Scalar s = rand_scalar(rng, f);
      CHECK(Scalar::from_string(f, s.to_string()) == s);
    }
  }
}

TEST_CASE("field spec validation and printing") {
  CHECK(FieldSpec::prime_field(101).to_string() == "fp:101");
  CHECK(qq().to_string() == "qq");
  CHECK(FieldSpec::prime_field(FieldSpec::kPitPrime).characteristic() ==
        FieldSpec::kPitPrime);
  CHECK(thrown_code([] { (void)FieldSpec::prime_field(91); }) == Errc::InvalidArgument);
  CHECK(thrown_code([] { (void)FieldSpec::prime_field(1); }) == Errc::InvalidArgument);
}

TEST_CASE("field axioms on random triples") {
  for (FieldSpec f : {f101(), fbig(), qq()}) {
    SeededRng rng(5);
    for (int i = 0; i < 100; ++i) {
      Scalar a = rand_scalar(rng, f), b = rand_scalar(rng, f), c = rand_scalar(rng, f);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + (-a)).is_zero());
      CHECK(a * Scalar::one(f) == a);
      if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(f));
    }
  }
}

TEST_CASE("uniform sampling") {
  FieldSpec f = f101();
  SeededRng r1(42), r2(42);
  for (int i = 0; i < 200; ++i) {
    Scalar a = sample_uniform(f, r1);
    CHECK(a == sample_uniform(f, r2));
  }

  // rationals need an explicit range and draw integers inside it
  SeededRng r3(7);
  CHECK(thrown_code([&] { (void)sample_uniform(qq(), r3); }) == Errc::MissingRange);
  for (int i = 0; i < 100; ++i) {
    Scalar s = sample_uniform(qq(), r3, 32);
    mpq_class v = s.rational_value();
    CHECK(v.get_den() == 1);
    CHECK(v.get_num() >= 0);
    CHECK(v.get_num() < 32);
  }

  // derived streams diverge from the parent
  SeededRng base(9);
  SeededRng d1 = base.derive(1), d2 = base.derive(2);
  bool differ = false;
  for (int i = 0; i < 8; ++i) differ = differ || d1.next() != d2.next();
  CHECK(differ);
}
