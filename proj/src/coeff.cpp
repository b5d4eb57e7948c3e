#include "diagalg/coeff.hpp"

#include <charconv>
#include <ostream>

#include "diagalg/error.hpp"

namespace diagalg {

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (std::uint64_t p = 3; p <= m / p; p += 2)
    if (m % p == 0) return false;
  return true;
}

RingSpec RingSpec::modulo(std::uint64_t m) {
  if (m < 2) throw InvalidArgument("modulus must be at least 2, got " + std::to_string(m));
  if (m > (std::uint64_t{1} << 62)) throw InvalidArgument("modulus too large: " + std::to_string(m));
  return RingSpec(RingKind::ModM, m);
}

RingSpec RingSpec::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.size() > 2 && text.substr(0, 2) == "Z/") {
    std::uint64_t m = 0;
    auto digits = text.substr(2);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw ParseError("bad modulus in ring '" + std::string(text) + "'", 2 + (ptr - digits.data()));
    return modulo(m);
  }
  throw ParseError("unknown ring '" + std::string(text) + "' (expected Z, Q or Z/m)", 0);
}

bool RingSpec::is_field() const noexcept {
  switch (kind_) {
    case RingKind::Integers: return false;
    case RingKind::Rationals: return true;
    case RingKind::ModM: return is_prime(modulus_);
  }
  return false;
}

std::string RingSpec::to_string() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::ModM: return "Z/" + std::to_string(modulus_);
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const RingSpec& ring) { return os << ring.to_string(); }

namespace {

mpz_class modulus_of(const RingSpec& ring) {
  mpz_class m;
  const std::uint64_t raw = ring.modulus();
  // mpz from uint64 without relying on unsigned long being 64 bits
  mpz_import(m.get_mpz_t(), 1, 1, sizeof(raw), 0, 0, &raw);
  return m;
}

void require_same_ring(const Scalar& a, const Scalar& b) {
  if (!(a.ring() == b.ring()))
    throw ContextMismatch("scalars from different rings: " + a.ring().to_string() + " vs " +
                          b.ring().to_string());
}

}  // namespace

Scalar::Scalar(const RingSpec& ring, const mpz_class& value) : ring_(ring), value_(value) {
  canonicalize();
}

Scalar::Scalar(const RingSpec& ring, const mpq_class& value) : ring_(ring), value_(value) {
  value_.canonicalize();
  canonicalize();
}

void Scalar::canonicalize() {
  switch (ring_.kind()) {
    case RingKind::Rationals:
      return;
    case RingKind::Integers:
      if (value_.get_den() != 1) throw InvalidArgument("non-integer value " + value_.get_str() + " in Z");
      return;
    case RingKind::ModM: {
      const mpz_class m = modulus_of(ring_);
      mpz_class num = value_.get_num() % m;
      if (num < 0) num += m;
      if (value_.get_den() != 1) {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), mpz_class(value_.get_den() % m).get_mpz_t(), m.get_mpz_t()) == 0)
          throw NotInvertible("denominator " + value_.get_den().get_str() + " is not a unit in " +
                              ring_.to_string());
        num = (num * inv) % m;
      }
      value_ = mpq_class(num);
      return;
    }
  }
}

Scalar Scalar::parse(const RingSpec& ring, std::string_view text) {
  if (text.empty()) throw ParseError("empty scalar", 0);
  std::size_t slash = text.find('/');
  auto parse_int = [&](std::string_view part, std::size_t offset) {
    std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (start == part.size()) throw ParseError("expected digits in scalar '" + std::string(text) + "'", offset);
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        throw ParseError("unexpected character in scalar '" + std::string(text) + "'", offset + i);
    return mpz_class(std::string(part[0] == '+' ? part.substr(1) : part), 10);
  };
  if (slash == std::string_view::npos) return Scalar(ring, parse_int(text, 0));
  if (ring.kind() == RingKind::Integers)
    throw ParseError("fractions are not elements of Z: '" + std::string(text) + "'", slash);
  mpz_class num = parse_int(text.substr(0, slash), 0);
  mpz_class den = parse_int(text.substr(slash + 1), slash + 1);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
  return Scalar(ring, mpq_class(num, den));
}

bool Scalar::is_unit() const {
  switch (ring_.kind()) {
    case RingKind::Integers: return value_ == 1 || value_ == -1;
    case RingKind::Rationals: return !is_zero();
    case RingKind::ModM: {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), value_.get_num().get_mpz_t(), modulus_of(ring_).get_mpz_t());
      return g == 1;
    }
  }
  return false;
}

Scalar Scalar::inverse() const {
  if (!is_unit()) throw NotInvertible(to_string() + " is not invertible in " + ring_.to_string());
  switch (ring_.kind()) {
    case RingKind::Integers:
      return *this;
    case RingKind::Rationals:
      return Scalar(ring_, mpq_class(1) / value_);
    case RingKind::ModM: {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), value_.get_num().get_mpz_t(), modulus_of(ring_).get_mpz_t());
      return Scalar(ring_, inv);
    }
  }
  return *this;
}

Scalar Scalar::pow(unsigned exponent) const {
  Scalar result = one(ring_);
  Scalar base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

std::string Scalar::to_string() const { return value_.get_str(); }

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  return Scalar(a.ring_, mpq_class(a.value_ + b.value_));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  return Scalar(a.ring_, mpq_class(a.value_ - b.value_));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  return Scalar(a.ring_, mpq_class(a.value_ * b.value_));
}

Scalar operator-(const Scalar& a) { return Scalar(a.ring_, mpq_class(-a.value_)); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace diagalg
