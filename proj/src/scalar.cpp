#include "ncfactor/scalar.hpp"

#include <charconv>

namespace ncfactor {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return uint64_t((unsigned __int128)a * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Extended Euclid on (a, p), p prime, a in [1, p).
uint64_t invmod(uint64_t a, uint64_t p) {
  int64_t t = 0, newt = 1;
  uint64_t r = p, newr = a;
  while (newr != 0) {
    uint64_t q = r / newr;
    int64_t tmp_t = t - int64_t(q) * newt;
    t = newt;
    newt = tmp_t;
    uint64_t tmp_r = r - q * newr;
    r = newr;
    newr = tmp_r;
  }
  if (r != 1) fail(Errc::DivisionByZero, "element not invertible");
  return t < 0 ? uint64_t(t + int64_t(p)) : uint64_t(t);
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin below 2^64 with the fixed witness set above.
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime_field(uint64_t p) {
  require(is_prime_u64(p), Errc::InvalidArgument,
          "modulus " + std::to_string(p) + " is not prime");
  FieldSpec f;
  f.p_ = p;
  return f;
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "qq") return rationals();
  if (text.substr(0, 3) == "fp:") {
    uint64_t p = 0;
    auto body = text.substr(3);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
    require(ec == std::errc() && ptr == body.data() + body.size(), Errc::InvalidArgument,
            "bad field spec '" + std::string(text) + "'");
    return prime_field(p);
  }
  fail(Errc::InvalidArgument, "bad field spec '" + std::string(text) + "' (want qq or fp:<p>)");
}

std::string FieldSpec::to_string() const {
  return is_rationals() ? "qq" : "fp:" + std::to_string(p_);
}

// f is already a validated prime field; revalidating here would put a
// primality test inside every arithmetic operation.
Scalar Scalar::make_fp(const FieldSpec& f, uint64_t residue) {
  Scalar s;
  s.field_ = f;
  s.r_ = residue;
  return s;
}

Scalar Scalar::from_residue(const FieldSpec& f, uint64_t r) {
  require(f.is_prime_field(), Errc::FieldMismatch, "from_residue() needs a prime field");
  return make_fp(f, r % f.characteristic());
}

Scalar Scalar::make_rat(mpq_class q) {
  Scalar s;
  if (q != 0) s.q_ = std::make_unique<mpq_class>(std::move(q));
  return s;
}

void Scalar::copy_from(const Scalar& o) {
  field_ = o.field_;
  r_ = o.r_;
  q_ = o.q_ ? std::make_unique<mpq_class>(*o.q_) : nullptr;
}

void Scalar::check_same_field(const Scalar& o) const {
  require(field_ == o.field_, Errc::FieldMismatch,
          field_.to_string() + " vs " + o.field_.to_string());
}

Scalar Scalar::zero(const FieldSpec& f) {
  Scalar s;
  s.field_ = f;
  return s;
}

Scalar Scalar::one(const FieldSpec& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldSpec& f, long long v) {
  if (f.is_prime_field()) {
    uint64_t p = f.characteristic();
    uint64_t mag = v < 0 ? uint64_t(-(v + 1)) + 1 : uint64_t(v);
    uint64_t m = mag % p;
    if (v < 0 && m != 0) m = p - m;
    return make_fp(f, m);
  }
  return make_rat(mpq_class((long)v));
}

Scalar Scalar::rational(long long num, unsigned long long den) {
  require(den != 0, Errc::DivisionByZero, "zero denominator");
  mpq_class q(mpz_class((long)num), mpz_class((unsigned long)den));
  q.canonicalize();
  return make_rat(std::move(q));
}

Scalar Scalar::from_string(const FieldSpec& f, std::string_view text) {
  require(!text.empty(), Errc::InvalidArgument, "empty scalar literal");
  if (f.is_rationals()) {
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0)
      fail(Errc::InvalidArgument, "bad rational literal '" + std::string(text) + "'");
    require(q.get_den() != 0, Errc::DivisionByZero, "zero denominator");
    q.canonicalize();
    Scalar s = make_rat(std::move(q));
    return s;
  }
  // Prime field: optional sign, then decimal digits, reduced mod p.
  bool neg = false;
  size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    i = 1;
  }
  require(i < text.size(), Errc::InvalidArgument, "bad integer literal");
  uint64_t p = f.characteristic();
  uint64_t acc = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    require(c >= '0' && c <= '9', Errc::InvalidArgument,
            "bad integer literal '" + std::string(text) + "'");
    acc = mulmod(acc, 10, p);
    acc = (acc + uint64_t(c - '0') % p) % p;
  }
  if (neg && acc != 0) acc = p - acc;
  Scalar s;
  s.field_ = f;
  s.r_ = acc;
  return s;
}

bool Scalar::is_zero() const { return field_.is_prime_field() ? r_ == 0 : q_ == nullptr; }

bool Scalar::is_one() const {
  if (field_.is_prime_field()) return r_ == 1 % field_.characteristic();
  return q_ && *q_ == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_prime_field()) {
    uint64_t p = field_.characteristic();
    uint64_t s = r_ + o.r_;
    if (s >= p || s < r_) s -= p;
    return make_fp(field_, s);
  }
  return make_rat(rational_value() + o.rational_value());
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  if (field_.is_prime_field())
    return make_fp(field_, r_ == 0 ? 0 : field_.characteristic() - r_);
  return make_rat(-rational_value());
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_prime_field())
    return make_fp(field_, mulmod(r_, o.r_, field_.characteristic()));
  if (is_zero() || o.is_zero()) return zero(field_);
  return make_rat(rational_value() * o.rational_value());
}

Scalar Scalar::inverse() const {
  require(!is_zero(), Errc::DivisionByZero, "inverse of zero");
  if (field_.is_prime_field())
    return make_fp(field_, invmod(r_, field_.characteristic()));
  return make_rat(1 / rational_value());
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_prime_field()) return r_ == o.r_;
  return rational_value() == o.rational_value();
}

std::string Scalar::to_string() const {
  if (field_.is_prime_field()) return std::to_string(r_);
  return rational_value().get_str();
}

uint64_t Scalar::residue() const {
  require(field_.is_prime_field(), Errc::FieldMismatch, "residue() on rational");
  return r_;
}

mpq_class Scalar::rational_value() const {
  require(field_.is_rationals(), Errc::FieldMismatch, "rational_value() on prime field");
  return q_ ? *q_ : mpq_class(0);
}

Scalar sample_uniform(const FieldSpec& f, SeededRng& rng, std::optional<uint64_t> range) {
  if (f.is_prime_field()) {
    uint64_t p = f.characteristic();
    uint64_t bound = range ? std::min(*range, p) : p;
    require(bound >= 1, Errc::MissingRange, "empty sampling range");
    return Scalar::from_int(f, (long long)rng.next_below(bound));
  }
  require(range.has_value() && *range >= 1, Errc::MissingRange,
          "rational sampling needs an explicit range");
  return Scalar::from_int(f, (long long)rng.next_below(*range));
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::MissingRange: return "MissingRange";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::VarCountMismatch: return "VarCountMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::TermBudgetExceeded: return "TermBudgetExceeded";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::NotMultilinear: return "NotMultilinear";
    case Errc::NotHomogeneous: return "NotHomogeneous";
    case Errc::BadSplit: return "BadSplit";
    case Errc::BadDegrees: return "BadDegrees";
    case Errc::DegreeExceeded: return "DegreeExceeded";
    case Errc::NotFound: return "NotFound";
    case Errc::PitFailure: return "PitFailure";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
  }
  return "Error";
}

}  // namespace ncfactor
