#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "ncfactor/errors.hpp"
#include "ncfactor/rng.hpp"

namespace ncfactor {

bool is_prime_u64(uint64_t n);

// A coefficient domain: the rationals, or a prime field F_p with p < 2^64.
class FieldSpec {
 public:
  FieldSpec() = default;  // rationals

  static FieldSpec rationals() { return FieldSpec(); }
  static FieldSpec prime_field(uint64_t p);
  static FieldSpec parse(std::string_view text);  // "qq" or "fp:<p>"

  bool is_rationals() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }
  uint64_t characteristic() const { return p_; }

  std::string to_string() const;
  bool operator==(const FieldSpec&) const = default;

  // Default modulus for randomized identity testing.
  static constexpr uint64_t kPitPrime = (uint64_t(1) << 61) - 1;

 private:
  uint64_t p_ = 0;  // 0 means rationals
};

// Exact field element. Prime-field values live inline as residues in [0, p);
// rationals sit behind a pointer (null = zero) so prime-field arithmetic
// never allocates.
class Scalar {
 public:
  Scalar() = default;  // rational zero

  static Scalar zero(const FieldSpec& f);
  static Scalar one(const FieldSpec& f);
  static Scalar from_int(const FieldSpec& f, long long v);
  static Scalar from_string(const FieldSpec& f, std::string_view text);
  static Scalar rational(long long num, unsigned long long den);
  static Scalar from_residue(const FieldSpec& f, uint64_t r);  // prime field only

  FieldSpec field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Canonical text: decimal residue for F_p; "a" or "a/b" in lowest terms,
  // denominator positive, for rationals.
  std::string to_string() const;

  uint64_t residue() const;     // prime field only
  mpq_class rational_value() const;  // rationals only

  Scalar(const Scalar& o) { copy_from(o); }
  Scalar& operator=(const Scalar& o) {
    if (this != &o) copy_from(o);
    return *this;
  }
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(Scalar&&) noexcept = default;

 private:
  void copy_from(const Scalar& o);
  void check_same_field(const Scalar& o) const;
  static Scalar make_fp(const FieldSpec& f, uint64_t residue);
  static Scalar make_rat(mpq_class q);

  FieldSpec field_;
  uint64_t r_ = 0;
  std::unique_ptr<mpq_class> q_;  // null = 0 (rationals)
};

// Uniform sample. Prime fields draw a residue; rationals draw an integer in
// [0, range) and require an explicit range (MissingRange otherwise).
Scalar sample_uniform(const FieldSpec& f, SeededRng& rng,
                      std::optional<uint64_t> range = std::nullopt);

}  // namespace ncfactor
