#ifndef D21_FIELD_HPP
#define D21_FIELD_HPP

#include <cstdint>
#include <iosfwd>

#include "d21/error.hpp"

namespace d21 {

/// Canonical residue in [0, p).
using Residue = std::uint32_t;

class Scalar;

/// Prime field F_p with p > 3 chosen at runtime.
///
/// The raw-residue helpers are what the hot loops use; `Scalar` wraps a
/// residue together with its modulus for code that wants checked mixing.
class PrimeField {
 public:
  /// Throws FieldError unless p is a prime in (3, 2^31).
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  Residue reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const;
  /// Throws FieldError on zero.
  Residue inv(Residue a) const;
  /// a / 2; total because p is odd.
  Residue half(Residue a) const { return mul(a, inv2_); }

  Scalar operator()(std::int64_t v) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
  Residue inv2_;
};

bool is_prime(std::uint64_t n);

/// A field element that remembers its modulus; mixing moduli throws.
class Scalar {
 public:
  Scalar(Residue value, std::uint32_t modulus);

  Residue value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const { return *this * o.inv(); }
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inv() const;
  Scalar pow(std::uint64_t e) const;
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }

 private:
  void check_same(const Scalar& o) const;

  Residue value_;
  std::uint32_t modulus_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace d21

#endif  // D21_FIELD_HPP
