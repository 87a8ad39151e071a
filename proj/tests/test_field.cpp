#include "d21/error.hpp"
#include "d21/field.hpp"
#include "doctest.h"

using namespace d21;

TEST_CASE("field arithmetic at p=5") {
  const PrimeField F(5);
  CHECK(F.add(2, 3) == 0);
  CHECK(F.inv(2) == 3);
  CHECK(F.sub(1, 3) == 3);
  CHECK(F.neg(0) == 0);
  CHECK(F.reduce(-7) == 3);
  CHECK(F.half(1) == 3);
  CHECK_THROWS_AS(F.inv(0), FieldError);
}

TEST_CASE("Fermat at p=7") {
  const PrimeField F(7);
  CHECK(F.pow(3, 7) == 3);
  for (Residue a = 1; a < 7; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
}

TEST_CASE("moduli are validated") {
  CHECK_THROWS_AS(PrimeField(4), FieldError);
  CHECK_THROWS_AS(PrimeField(3), FieldError);
  CHECK_THROWS_AS(PrimeField(2), FieldError);
  CHECK_NOTHROW(PrimeField(31));
  CHECK(is_prime(2147483647ULL));
  CHECK_FALSE(is_prime(1));
}

TEST_CASE("scalars") {
  const PrimeField F(11);
  const Scalar a = F(7), b = F(-3);
  CHECK((a + b).value() == 4);
  CHECK((a * b).value() == F.mul(7, 8));
  CHECK((a / a).value() == 1);
  CHECK((-a).value() == 4);
  CHECK(a.pow(10).value() == 1);
  CHECK_THROWS_AS(F(0).inv(), FieldError);
  CHECK_THROWS_AS(a + PrimeField(13)(1), FieldError);
}

TEST_CASE("field axioms exhaustively at p=7") {
  const PrimeField F(7);
  for (Residue a = 0; a < 7; ++a) {
    for (Residue b = 0; b < 7; ++b) {
      CHECK(F.add(a, b) == (a + b) % 7);
      CHECK(F.mul(a, b) == (a * b) % 7);
      for (Residue c = 0; c < 7; ++c) CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    }
  }
}
