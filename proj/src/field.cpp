#include "d21/field.hpp"

#include <ostream>
#include <string>

namespace d21 {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p), inv2_(0) {
  if (p <= 3 || p >= (1u << 31) || !is_prime(p)) {
    throw FieldError("modulus must be a prime greater than 3, got " + std::to_string(p));
  }
  inv2_ = (p + 1) / 2;
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const {
  Residue result = 1 % p_;
  Residue base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw FieldError("inverse of zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

Scalar PrimeField::operator()(std::int64_t v) const { return Scalar(reduce(v), p_); }

Scalar::Scalar(Residue value, std::uint32_t modulus) : value_(value % modulus), modulus_(modulus) {}

void Scalar::check_same(const Scalar& o) const {
  if (modulus_ != o.modulus_) {
    throw FieldError("modulus mismatch: " + std::to_string(modulus_) + " vs " +
                     std::to_string(o.modulus_));
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  return Scalar(static_cast<Residue>((std::uint64_t{value_} + o.value_) % modulus_), modulus_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  return Scalar(static_cast<Residue>((std::uint64_t{value_} + modulus_ - o.value_) % modulus_),
                modulus_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  return Scalar(static_cast<Residue>(std::uint64_t{value_} * o.value_ % modulus_), modulus_);
}

Scalar Scalar::operator-() const { return Scalar(value_ == 0 ? 0 : modulus_ - value_, modulus_); }

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar result(1, modulus_);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Scalar Scalar::inv() const {
  if (value_ == 0) throw FieldError("inverse of zero in F_" + std::to_string(modulus_));
  return pow(modulus_ - 2);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.value(); }

}  // namespace d21
