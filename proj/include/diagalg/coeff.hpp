#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace diagalg {

enum class RingKind { Integers, Rationals, ModM };

// The ground ring k. Syntax: "Z", "Q", "Z/m" with m >= 2.
class RingSpec {
 public:
  static RingSpec integers() { return RingSpec(RingKind::Integers, 0); }
  static RingSpec rationals() { return RingSpec(RingKind::Rationals, 0); }
  static RingSpec modulo(std::uint64_t m);
  static RingSpec parse(std::string_view text);

  RingKind kind() const noexcept { return kind_; }
  // Zero unless kind() == ModM.
  std::uint64_t modulus() const noexcept { return modulus_; }

  bool is_field() const noexcept;
  bool is_prime_field() const noexcept { return kind_ == RingKind::ModM && is_field(); }
  // Homology routines accept the integers and fields only.
  bool supports_homology() const noexcept { return kind_ == RingKind::Integers || is_field(); }

  std::string to_string() const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  RingSpec(RingKind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  RingKind kind_;
  std::uint64_t modulus_;
};

std::ostream& operator<<(std::ostream& os, const RingSpec& ring);

bool is_prime(std::uint64_t m);

// An exact element of a RingSpec. Integers carry arbitrary precision; residues
// stay in [0, m); fractions stay reduced with positive denominator.
class Scalar {
 public:
  Scalar(const RingSpec& ring, const mpz_class& value);
  Scalar(const RingSpec& ring, const mpq_class& value);
  Scalar(const RingSpec& ring, long value) : Scalar(ring, mpz_class(value)) {}

  static Scalar zero(const RingSpec& ring) { return Scalar(ring, 0L); }
  static Scalar one(const RingSpec& ring) { return Scalar(ring, 1L); }
  // "3", "-2", "1/2" (fractions only over Q and over Z/m when the
  // denominator is a unit).
  static Scalar parse(const RingSpec& ring, std::string_view text);

  const RingSpec& ring() const noexcept { return ring_; }
  // Canonical value: integer for Z, residue for Z/m, reduced fraction for Q.
  const mpq_class& value() const noexcept { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_unit() const;

  Scalar inverse() const;
  Scalar pow(unsigned exponent) const;

  std::string to_string() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
  Scalar& operator*=(const Scalar& other) { return *this = *this * other; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }

 private:
  void canonicalize();

  RingSpec ring_;
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Named forms of the ring operations.
inline Scalar scalar_add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar scalar_mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar scalar_neg(const Scalar& a) { return -a; }
inline Scalar scalar_inverse(const Scalar& a) { return a.inverse(); }

}  // namespace diagalg
