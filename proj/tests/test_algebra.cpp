#include "d21/algebra.hpp"
#include "d21/error.hpp"
#include "doctest.h"

using namespace d21;
using G = Generator;

namespace {
AlgebraElement elem(const PrimeField& F, std::initializer_list<std::pair<G, std::int64_t>> terms) {
  AlgebraElement e;
  for (auto [g, c] : terms) e[g] = F.reduce(c);
  return e;
}
}  // namespace

TEST_CASE("bracket table entries") {
  const auto A = SuperAlgebra::build(5, 2);
  const auto& F = A.field();
  CHECK(A.bracket(G::e1, G::f1) == AlgebraElement::basis(G::h1));
  CHECK(A.bracket(G::x1, G::y4) == elem(F, {{G::h1, -3}, {G::h2, 1}, {G::h3, 2}}));
  CHECK(A.bracket(G::f1, G::f2).is_zero());
  CHECK(A.bracket(G::h1, G::x3) == AlgebraElement::basis(G::x3));
  CHECK(A.bracket(G::y2, G::y3) == elem(F, {{G::f1, 6}}));
  for (auto g : all_generators()) {
    if (parity(g) == Parity::Even) CHECK(A.bracket(g, g).is_zero());
  }
}

TEST_CASE("p-map and weights") {
  const auto A = SuperAlgebra::build(5, 2);
  CHECK(A.pmap(G::h2) == AlgebraElement::basis(G::h2));
  CHECK(A.pmap(G::f3).is_zero());
  CHECK_THROWS_AS(A.pmap(G::x1), ParameterError);
  CHECK(A.weight_of(G::f2) == Weight{{0, 3, 0}});
  CHECK(A.weight_of(G::x2) == Weight{{1, 1, 4}});
  CHECK(A.weight_of(G::h1) == Weight{{0, 0, 0}});
}

TEST_CASE("alpha restrictions") {
  CHECK_THROWS_AS(SuperAlgebra::build(5, 0), ParameterError);
  CHECK_THROWS_AS(SuperAlgebra::build(5, 4), ParameterError);
  CHECK_THROWS_AS(SuperAlgebra::build(5, -1), ParameterError);
  CHECK_THROWS_AS(SuperAlgebra::build(4, 1), FieldError);
}

TEST_CASE("axioms hold for every valid alpha at p=5,7") {
  for (std::uint32_t p : {5u, 7u}) {
    for (std::int64_t a = 1; a + 1 < p; ++a) {
      const auto report = check_axioms(SuperAlgebra::build(p, a));
      INFO("p=" << p << " alpha=" << a);
      CHECK(report.ok());
    }
  }
}

TEST_CASE("a perturbed structure constant is caught") {
  const auto A = SuperAlgebra::build(5, 2).with_perturbation(G::x1, G::y4, G::h1, 1);
  const auto report = check_axioms(A);
  REQUIRE_FALSE(report.ok());
  bool jacobi = false;
  for (const auto& v : report.violations) jacobi = jacobi || v.find("jacobi") != std::string::npos;
  CHECK(jacobi);
}

TEST_CASE("super-antisymmetry and names") {
  const auto A = SuperAlgebra::build(7, 3);
  const auto& F = A.field();
  for (auto a : all_generators()) {
    CHECK(generator_from_name(name(a)) == a);
    for (auto b : all_generators()) {
      const Residue s = koszul_sign(parity(a), parity(b)) == 1 ? F.neg(1) : 1;
      for (auto g : all_generators()) CHECK(A.bracket(b, a)[g] == F.mul(s, A.bracket(a, b)[g]));
    }
  }
  CHECK_FALSE(generator_from_name("z9").has_value());
}

TEST_CASE("bracket json lists nonzero ordered pairs") {
  const auto j = SuperAlgebra::build(5, 2).bracket_json();
  CHECK(j["p"] == 5);
  CHECK(j["alpha"] == 2);
  CHECK(j["pairs"].size() > 0);
  for (const auto& e : j["pairs"]) CHECK_FALSE(e["value"].empty());
}
