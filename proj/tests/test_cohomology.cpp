#include "d21/cohomology.hpp"
#include "d21/error.hpp"
#include "doctest.h"

using namespace d21;
using G = Generator;

namespace {
VermaModule graded(std::int64_t alpha, HighestWeight l, Character c = {}, std::uint32_t p = 5) {
  return VermaModule::build(SuperAlgebra::build(p, alpha), l, c, ActionScope::TargetWeights);
}
VermaModule full(std::int64_t alpha, HighestWeight l, Character c = {}) {
  return VermaModule::build(SuperAlgebra::build(5, alpha), l, c, ActionScope::Full);
}
std::pair<std::size_t, std::size_t> dims(const VermaModule& M) {
  const auto r = h1(M);
  return {r.dim_even, r.dim_odd};
}
using Dims = std::pair<std::size_t, std::size_t>;
}  // namespace

TEST_CASE("inner derivations") {
  const auto M = full(2, {{2, 3, 3}});
  const auto D = inner_derivation(ModuleVector::basis(5, 0), M);
  CHECK(D[G::h1] == ModuleVector::basis(5, 0, 2));
  CHECK(D[G::h3] == ModuleVector::basis(5, 0, 3));
  CHECK(D[G::e1].is_zero());
  CHECK(derivation_violations(D, M).empty());
  const auto top = ModuleVector::basis(5, M.target_monomial(G::h1, Theta{15}));
  CHECK(inner_derivation(top, M).is_zero());

  const auto a = ModuleVector::basis(5, M.target_monomial(G::h1, Theta{3}), 2);
  const auto b = ModuleVector::basis(5, M.target_monomial(G::h1, Theta{5}), 3);
  auto sum = a;
  sum += b;
  auto lhs = inner_derivation(sum, M);
  const auto da = inner_derivation(a, M), db = inner_derivation(b, M);
  for (auto g : all_generators()) {
    auto rhs = da[g];
    rhs += db[g];
    CHECK(lhs[g] == rhs);
  }
  auto mixed = a;
  mixed += ModuleVector::basis(5, M.target_monomial(G::h1, Theta{1}));
  CHECK_THROWS_AS(inner_derivation(mixed, M), ParameterError);
}

TEST_CASE("inner space dimensions") {
  const auto generic = graded(2, {{1, 1, 1}});
  CHECK(zero_weight_inner_space(generic, Parity::Even).dim() == 8);
  CHECK(zero_weight_inner_space(generic, Parity::Odd).dim() == 8);
  const auto special = graded(2, {{2, 3, 3}});
  CHECK(zero_weight_inner_space(special, Parity::Even).dim() == 7);
}

TEST_CASE("kernel soundness and inner inclusion") {
  for (const auto& [l, c] : std::vector<std::pair<HighestWeight, Character>>{
           {{{2, 3, 3}}, {}}, {{{3, 2, 2}}, {}}, {{{1, 4, 0}}, {{1, 0, 0}}}, {{{2, 3, 0}}, {{0, 1, 1}}}}) {
    const auto M = graded(3, l, c);
    for (Parity P : {Parity::Even, Parity::Odd}) {
      const GradedLayout layout(M, P);
      CHECK(layout.size() == 136);
      const auto der = zero_weight_derivations(M, P);
      CHECK(der.contains(zero_weight_inner_space(M, P)));
      for (const auto& v : der.basis()) CHECK(derivation_violations(layout.decode(v), M).empty());
    }
  }
}

TEST_CASE("ordered pairs add no information") {
  const auto M = graded(2, {{2, 3, 3}});
  SolveOptions all;
  all.equations = EquationSet::AllOrderedPairs;
  for (Parity P : {Parity::Even, Parity::Odd}) {
    CHECK(zero_weight_derivations(M, P) == zero_weight_derivations(M, P, all));
  }
  CHECK(equation_pairs().size() == 136 + 8);
  CHECK(all_ordered_pairs().size() == 289);
}

TEST_CASE("h1 is independent of row and column order") {
  const auto M = graded(2, {{2, 3, 3}});
  const auto base = to_json(h1(M)).dump();
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    SolveOptions o;
    o.row_shuffle_seed = seed;
    o.col_shuffle_seed = seed * 7;
    CHECK(to_json(h1(M, o)).dump() == base);
  }
}

TEST_CASE("h1 at the exceptional weights") {
  CHECK(dims(graded(2, {{2, 3, 3}})) == Dims{6, 0});
  CHECK(dims(graded(2, {{2, 3, 0}})) == Dims{1, 0});
  CHECK(dims(graded(2, {{2, 0, 3}})) == Dims{1, 0});
  CHECK(dims(graded(2, {{3, 2, 2}})) == Dims{0, 1});
  CHECK(dims(graded(2, {{0, 0, 0}})) == Dims{0, 0});
  CHECK(dims(graded(2, {{2, 3, 3}}, {{1, 0, 0}})) == Dims{0, 0});
  CHECK(dims(graded(4, {{2, 5, 5}}, {}, 7)) == Dims{6, 0});
}

TEST_CASE("nonzero chi(f1) leaves only inner derivations") {
  for (const HighestWeight l : {HighestWeight{{2, 3, 3}}, HighestWeight{{4, 1, 0}}}) {
    const auto M = graded(2, l, {{1, 0, 0}});
    for (Parity P : {Parity::Even, Parity::Odd}) {
      CHECK(zero_weight_derivations(M, P) == zero_weight_inner_space(M, P));
    }
  }
}

TEST_CASE("full oracle agrees with the graded computation") {
  for (const auto& [l, c] : std::vector<std::pair<HighestWeight, Character>>{
           {{{2, 3, 3}}, {}}, {{{0, 0, 0}}, {}}, {{{1, 2, 3}}, {{1, 0, 0}}}}) {
    const auto M = full(2, l, c);
    const auto g = h1(M);
    const auto e = full_derivation_dims(M, Parity::Even);
    const auto o = full_derivation_dims(M, Parity::Odd);
    CHECK(e.der - e.ider == g.dim_even);
    CHECK(o.der - o.ider == g.dim_odd);
    CHECK(e.der == g.der_even + e.ider - g.inner_even);
    CHECK(o.der == g.der_odd + o.ider - g.inner_odd);
  }
  CHECK_THROWS_AS(full_derivation_dims(graded(2, {{0, 0, 0}}), Parity::Even), ParameterError);
}

TEST_CASE("outer test") {
  const auto M = full(2, {{2, 3, 3}});
  CHECK_FALSE(is_outer(inner_derivation(ModuleVector::basis(5, 0), M), M));
  CHECK_FALSE(is_outer(inner_derivation(ModuleVector::basis(5, 17), M), M));
  for (const auto& phi : h1(M).representatives) CHECK(is_outer(phi, M));
  auto bogus = DerivationMap::zero(Parity::Even, 5);
  bogus[G::h1] = ModuleVector::basis(5, 0);
  CHECK_THROWS_AS(is_outer(bogus, M), ParameterError);
}

TEST_CASE("psi maps") {
  const std::array<Residue, 5> zeros{};
  const auto M1 = graded(2, {{2, 3, 3}});
  CHECK(psi(1, zeros, M1).map.is_zero());
  const std::array<Residue, 1> one{1};
  const auto M2 = graded(2, {{2, 3, 0}});
  CHECK(is_outer(psi(2, one, M2).map, M2));
  const auto M3 = graded(2, {{2, 0, 3}});
  CHECK(is_outer(psi(3, one, M3).map, M3));
  const auto M4 = graded(1, {{3, 2, 2}});
  const auto r4 = psi(4, one, M4);
  CHECK(r4.map.parity == Parity::Odd);
  CHECK(is_outer(r4.map, M4));
  CHECK_THROWS_AS(psi(2, one, M1), ParameterError);
  CHECK_THROWS_AS(psi(2, zeros, M2), ParameterError);
  CHECK_THROWS_AS(psi(5, one, M2), ParameterError);
  for (int k = 1; k <= 4; ++k) {
    const auto M = graded(3, psi_regime(k, PrimeField(5)));
    const auto v = verify_psi(k, M);
    CHECK(v.passed);
  }
  const auto finding = verify_psi(1, M1).report["parameter_count_finding"];
  CHECK(finding["table_parameters"] == 5);
  CHECK(finding["h1_even"] == 6);
}

TEST_CASE("h-image and f-coupling checks") {
  CHECK(check_lemma_h_images(graded(2, {{1, 4, 2}})).ok());
  CHECK(check_lemma_h_images(graded(2, {{2, 3, 3}})).ok());
  CHECK(check_lemma_h_images(graded(2, {{2, 3, 3}}, {{0, 1, 0}})).ok());
  CHECK(check_f_coupling(graded(2, {{2, 3, 3}})).ok());
  CHECK(check_f_coupling(graded(2, {{1, 1, 1}}, {{1, 1, 1}})).ok());
  CHECK(check_f_coupling(graded(3, {{4, 0, 2}}, {{0, 2, 1}})).ok());
}

TEST_CASE("json shape") {
  const auto j = to_json(h1(graded(2, {{2, 3, 3}})));
  CHECK(j["h1"]["even"] == 6);
  CHECK(j["lambda"] == nlohmann::json({2, 3, 3}));
  CHECK(j["representatives"].size() == 6);
  CHECK(j["representatives"][0]["parity"] == "even");
  CHECK(j["representatives"][0]["images"].size() == 17);
}
