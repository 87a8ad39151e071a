#include <random>

#include "d21/enveloping.hpp"
#include "d21/error.hpp"
#include "doctest.h"

using namespace d21;
using G = Generator;

namespace {
PBWMonomial mono(std::uint32_t i1, std::uint32_t i2, std::uint32_t i3, Theta th = {}) {
  return {{i1, i2, i3}, th};
}
}  // namespace

TEST_CASE("monomial indexing round-trips") {
  for (std::size_t idx = 0; idx < module_dimension(5); idx += 7) {
    CHECK(PBWMonomial::from_index(idx, 5).index(5) == idx);
  }
  CHECK(module_dimension(5) == 2000);
  const auto m = mono(1, 2, 3, Theta::from_bits(1, 0, 1, 0));
  CHECK(m.word() == std::vector<G>{G::f1, G::f2, G::f2, G::f3, G::f3, G::f3, G::y1, G::y3});
  CHECK(m.parity() == Parity::Even);
}

TEST_CASE("normal form examples") {
  const auto A = SuperAlgebra::build(5, 2);
  const HighestWeight lambda{{2, 3, 1}};
  const Character chi{{3, 0, 2}};
  Straightener S(A, lambda, chi);
  const std::vector<G> f1{G::f1};
  CHECK(S.normal_form(f1, 1) == ModuleVector::basis(5, mono(1, 0, 0).index(5)));
  const std::vector<G> ef{G::e1, G::f1};
  CHECK(S.normal_form(ef, 1) == ModuleVector::basis(5, 0, 2));
  const std::vector<G> f1p(5, G::f1);
  CHECK(S.normal_form(f1p, 1) == ModuleVector::basis(5, 0, A.field().pow(3, 5)));
  const std::vector<G> yy{G::y1, G::y1};
  CHECK(S.normal_form(yy, 1).is_zero());
  const std::vector<G> x1y4{G::x1, G::y4};
  // -(1+alpha) l1 + l2 + alpha l3 = -6 + 3 + 2 = -1
  CHECK(S.normal_form(x1y4, 1) == ModuleVector::basis(5, 0, 4));
}

TEST_CASE("rewrite orders agree on random words") {
  const auto A = SuperAlgebra::build(5, 3);
  Straightener S(A, {{1, 4, 2}}, {{1, 0, 2}});
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> len(1, 8), letter(0, kNumGenerators - 1);
  for (int t = 0; t < 1000; ++t) {
    std::vector<G> w(len(rng));
    for (auto& g : w) g = generator_at(letter(rng));
    const auto a = S.normal_form(w, 1, RewriteOrder::Innermost);
    const auto b = S.normal_form(w, 1, RewriteOrder::Leftmost);
    const auto c = S.normal_form(w, 1, RewriteOrder::Random, static_cast<std::uint64_t>(t) + 1);
    REQUIRE(a == b);
    REQUIRE(a == c);
    CHECK(S.last_step_count() < Straightener::kStepLimit);
  }
}

TEST_CASE("weights of monomials") {
  const PrimeField F(5);
  const HighestWeight lambda{{2, 3, 3}};
  CHECK(weight_of_monomial(F, mono(0, 0, 0), lambda) == Weight{{2, 3, 3}});
  CHECK(weight_of_monomial(F, mono(0, 1, 0), lambda) == Weight{{2, 1, 3}});
  CHECK(weight_of_monomial(F, mono(0, 0, 0, Theta{15}), lambda) == Weight{{3, 3, 3}});
  CHECK(target_weights(F).size() == 15);
}

TEST_CASE("target weight bases") {
  const PrimeField F(5);
  const HighestWeight lambda{{2, 3, 3}};
  const auto B = target_weight_basis(F, Weight{{0, 0, 0}}, lambda);
  CHECK(B.entries[15].monomial.f_exp == std::array<std::uint32_t, 3>{4, 4, 4});
  const auto top = target_weight_basis(F, lambda.as_weight(), lambda);
  CHECK(top.entries[0].monomial.f_exp == std::array<std::uint32_t, 3>{0, 0, 0});
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Residue> r(0, 4);
  for (int t = 0; t < 5; ++t) {
    const HighestWeight l{{r(rng), r(rng), r(rng)}};
    for (const auto& beta : target_weights(F)) {
      const auto basis = target_weight_basis(F, beta, l);
      CHECK(basis.is_target);
      for (const auto& e : basis.entries) CHECK(weight_of_monomial(F, e.monomial, l) == beta);
    }
  }
}

TEST_CASE("module actions") {
  const auto A = SuperAlgebra::build(5, 2);
  const HighestWeight lambda{{1, 3, 2}};
  const Character chi{{2, 0, 0}};
  const auto M = VermaModule::build(A, lambda, chi);
  const auto& F = M.field();
  CHECK(M.dim() == 2000);
  CHECK(M.act(G::e2, 0).is_zero());
  const std::size_t y1 = mono(0, 0, 0, Theta::from_bits(1, 0, 0, 0)).index(5);
  CHECK(M.act(G::h2, y1) == ModuleVector::basis(5, y1, 4));
  const std::size_t y4 = mono(0, 0, 0, Theta::from_bits(0, 0, 0, 1)).index(5);
  CHECK(M.act(G::x1, y4) == ModuleVector::basis(5, 0, F.reduce(-3 * 1 + 3 + 2 * 2)));
  CHECK(M.act(G::f1, mono(4, 0, 0).index(5)) == ModuleVector::basis(5, 0, F.pow(2, 5)));
  for (std::size_t idx = 0; idx < M.dim(); idx += 11) {
    const auto m = PBWMonomial::from_index(idx, 5);
    const Residue expect = F.reduce(1 - 2 * static_cast<std::int64_t>(m.f_exp[0]) - m.theta.sum());
    CHECK(M.act(G::h1, idx) == ModuleVector::basis(5, idx, expect));
  }
}

TEST_CASE("module axioms on a full build") {
  const auto A = SuperAlgebra::build(5, 3);
  for (const Character chi : {Character{{0, 0, 0}}, Character{{1, 1, 1}}}) {
    const auto M = VermaModule::build(A, {{3, 0, 4}}, chi);
    const auto report = check_module_axioms(M);
    CHECK(report.ok());
  }
}

TEST_CASE("target-weight scope refuses other columns") {
  const auto A = SuperAlgebra::build(5, 2);
  const auto M = VermaModule::build(A, {{0, 1, 2}}, {}, ActionScope::TargetWeights);
  std::size_t outside = 0;
  while (M.has_column(outside)) ++outside;
  CHECK_THROWS_AS(M.act(G::f1, outside), ConsistencyError);
  CHECK_NOTHROW(M.act(G::f1, M.target_monomial(G::h1, Theta{3})));
}
