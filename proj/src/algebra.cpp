#include "d21/algebra.hpp"

#include <sstream>

namespace d21 {
namespace {

constexpr std::array<std::string_view, kNumGenerators> kNames = {
    "h1", "h2", "h3", "e1", "e2", "e3", "f1", "f2", "f3",
    "x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"};

// k_i for i in 1..4, with k = x or y.
Generator odd_gen(bool is_x, int i) {
  return generator_at(index(is_x ? Generator::x1 : Generator::y1) + static_cast<std::size_t>(i - 1));
}

using Matrix17 = std::array<std::array<Residue, kNumGenerators>, kNumGenerators>;

Matrix17 ad_matrix(const SuperAlgebra& A, Generator a) {
  Matrix17 m{};
  for (auto b : all_generators()) {
    for (const auto& t : A.bracket_terms(a, b)) m[index(t.gen)][index(b)] = t.coeff;
  }
  return m;
}

Matrix17 multiply(const PrimeField& F, const Matrix17& x, const Matrix17& y) {
  Matrix17 out{};
  for (std::size_t i = 0; i < kNumGenerators; ++i) {
    for (std::size_t k = 0; k < kNumGenerators; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < kNumGenerators; ++j) {
        out[i][j] = F.add(out[i][j], F.mul(x[i][k], y[k][j]));
      }
    }
  }
  return out;
}

}  // namespace

std::string_view name(Generator g) { return kNames[index(g)]; }
std::string_view name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

std::optional<Generator> generator_from_name(std::string_view s) {
  for (std::size_t i = 0; i < kNumGenerators; ++i) {
    if (kNames[i] == s) return generator_at(i);
  }
  return std::nullopt;
}

Weight add(const PrimeField& F, const Weight& a, const Weight& b) {
  return Weight{{F.add(a.coords[0], b.coords[0]), F.add(a.coords[1], b.coords[1]),
                 F.add(a.coords[2], b.coords[2])}};
}

Weight negate(const PrimeField& F, const Weight& a) {
  return Weight{{F.neg(a.coords[0]), F.neg(a.coords[1]), F.neg(a.coords[2])}};
}

std::string to_string(const Weight& w) {
  std::ostringstream os;
  os << '(' << w.coords[0] << ',' << w.coords[1] << ',' << w.coords[2] << ')';
  return os.str();
}

bool AlgebraElement::is_zero() const {
  for (auto c : coeffs) {
    if (c != 0) return false;
  }
  return true;
}

std::optional<Parity> AlgebraElement::homogeneous_parity() const {
  bool even = false, odd = false;
  for (auto g : all_generators()) {
    if (coeffs[index(g)] == 0) continue;
    (parity(g) == Parity::Even ? even : odd) = true;
  }
  if (even && odd) return std::nullopt;
  return odd ? Parity::Odd : Parity::Even;
}

SuperAlgebra::SuperAlgebra(PrimeField field, Residue alpha) : field_(field), alpha_(alpha) {}

void SuperAlgebra::set(Generator a, Generator b,
                       std::initializer_list<std::pair<Generator, std::int64_t>> value) {
  AlgebraElement v;
  for (const auto& [g, c] : value) v[g] = field_.add(v[g], field_.reduce(c));
  table_[index(a) * kNumGenerators + index(b)] = v;
  // [b,a] = -(-1)^{|a||b|} [a,b]
  AlgebraElement w = v;
  if (koszul_sign(parity(a), parity(b)) == 1) {
    for (auto& c : w.coeffs) c = field_.neg(c);
  }
  table_[index(b) * kNumGenerators + index(a)] = w;
}

SuperAlgebra SuperAlgebra::build(std::uint32_t p, std::int64_t alpha) {
  PrimeField F(p);
  Residue a = F.reduce(alpha);
  if (a == 0 || a == p - 1) {
    throw ParameterError("alpha must not be 0 or -1 mod p, got " + std::to_string(alpha));
  }
  SuperAlgebra A(F, a);
  using G = Generator;
  const std::int64_t al = a;

  // sl(2)^3
  const std::array<std::array<G, 3>, 3> sl2 = {{{G::h1, G::e1, G::f1},
                                                {G::h2, G::e2, G::f2},
                                                {G::h3, G::e3, G::f3}}};
  for (const auto& [h, e, f] : sl2) {
    A.set(e, f, {{h, 1}});
    A.set(h, e, {{e, 2}});
    A.set(h, f, {{f, -2}});
  }

  // even on odd; k ranges over x and y
  for (bool is_x : {true, false}) {
    for (int i = 1; i <= 4; ++i) {
      const G k = odd_gen(is_x, i);
      A.set(G::h1, k, {{k, is_x ? 1 : -1}});
      A.set(G::h2, k, {{k, i <= 2 ? 1 : -1}});
      A.set(G::h3, k, {{k, i % 2 == 1 ? 1 : -1}});
    }
    for (int l : {3, 4}) A.set(G::e2, odd_gen(is_x, l), {{odd_gen(is_x, l - 2), 1}});
    for (int j : {1, 2}) A.set(G::f2, odd_gen(is_x, j), {{odd_gen(is_x, j + 2), 1}});
    for (int s : {2, 4}) A.set(G::e3, odd_gen(is_x, s), {{odd_gen(is_x, s - 1), 1}});
    for (int t : {1, 3}) A.set(G::f3, odd_gen(is_x, t), {{odd_gen(is_x, t + 1), 1}});
  }
  for (int i = 1; i <= 4; ++i) {
    A.set(G::e1, odd_gen(false, i), {{odd_gen(true, i), 1}});
    A.set(G::f1, odd_gen(true, i), {{odd_gen(false, i), 1}});
  }

  // odd-odd
  A.set(G::x1, G::y2, {{G::e2, -2}});
  A.set(G::x1, G::y3, {{G::e3, -2 * al}});
  A.set(G::x1, G::y4, {{G::h1, -(1 + al)}, {G::h2, 1}, {G::h3, al}});
  A.set(G::x2, G::y1, {{G::e2, 2}});
  A.set(G::x2, G::y4, {{G::f3, 2 * al}});
  A.set(G::x2, G::y3, {{G::h1, 1 + al}, {G::h2, -1}, {G::h3, al}});
  A.set(G::x3, G::y1, {{G::e3, 2 * al}});
  A.set(G::x3, G::y4, {{G::f2, 2}});
  A.set(G::x3, G::y2, {{G::h1, 1 + al}, {G::h2, 1}, {G::h3, -al}});
  A.set(G::x4, G::y2, {{G::f3, -2 * al}});
  A.set(G::x4, G::y3, {{G::f2, -2}});
  A.set(G::x4, G::y1, {{G::h1, -(1 + al)}, {G::h2, -1}, {G::h3, -al}});
  A.set(G::y2, G::y3, {{G::f1, 2 * (1 + al)}});
  A.set(G::y1, G::y4, {{G::f1, -2 * (1 + al)}});
  A.set(G::x2, G::x3, {{G::e1, -2 * (1 + al)}});
  A.set(G::x1, G::x4, {{G::e1, 2 * (1 + al)}});

  // weights: h -> 0, e_i -> 2 eps_i, f_i -> -2 eps_i, odd -> sign pattern of the omega tensor
  for (std::size_t i = 0; i < 3; ++i) {
    Weight e, f;
    e.coords[i] = F.reduce(2);
    f.coords[i] = F.reduce(-2);
    A.weights_[index(G::e1) + i] = e;
    A.weights_[index(G::f1) + i] = f;
  }
  const std::array<std::array<int, 2>, 4> signs = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  for (int i = 1; i <= 4; ++i) {
    const auto& s = signs[static_cast<std::size_t>(i - 1)];
    A.weights_[index(odd_gen(true, i))] = Weight{{1, F.reduce(s[0]), F.reduce(s[1])}};
    A.weights_[index(odd_gen(false, i))] = Weight{{F.reduce(-1), F.reduce(s[0]), F.reduce(s[1])}};
  }

  A.refresh_terms();
  return A;
}

void SuperAlgebra::refresh_terms() {
  for (std::size_t k = 0; k < table_.size(); ++k) {
    terms_[k].clear();
    for (auto g : all_generators()) {
      if (table_[k][g] != 0) terms_[k].push_back({g, table_[k][g]});
    }
  }
}

AlgebraElement SuperAlgebra::bracket(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement out;
  for (auto ga : all_generators()) {
    if (a[ga] == 0) continue;
    for (auto gb : all_generators()) {
      if (b[gb] == 0) continue;
      const Residue ab = field_.mul(a[ga], b[gb]);
      for (const auto& t : bracket_terms(ga, gb)) {
        out[t.gen] = field_.add(out[t.gen], field_.mul(ab, t.coeff));
      }
    }
  }
  return out;
}

AlgebraElement SuperAlgebra::pmap(Generator a) const {
  if (parity(a) == Parity::Odd) {
    throw ParameterError("p-map is defined on the even part only; got " + std::string(name(a)));
  }
  if (a == Generator::h1 || a == Generator::h2 || a == Generator::h3) {
    return AlgebraElement::basis(a);
  }
  return AlgebraElement{};
}

SuperAlgebra SuperAlgebra::with_perturbation(Generator a, Generator b, Generator target,
                                             std::int64_t delta) const {
  SuperAlgebra out = *this;
  AlgebraElement& ab = out.table_[index(a) * kNumGenerators + index(b)];
  AlgebraElement& ba = out.table_[index(b) * kNumGenerators + index(a)];
  const Residue d = field_.reduce(delta);
  ab[target] = field_.add(ab[target], d);
  if (a != b) {
    const Residue d_ba = koszul_sign(parity(a), parity(b)) == 1 ? field_.neg(d) : d;
    ba[target] = field_.add(ba[target], d_ba);
  }
  out.refresh_terms();
  return out;
}

nlohmann::json SuperAlgebra::bracket_json() const {
  nlohmann::json pairs = nlohmann::json::array();
  for (auto a : all_generators()) {
    for (auto b : all_generators()) {
      const auto& terms = bracket_terms(a, b);
      if (terms.empty()) continue;
      nlohmann::json value = nlohmann::json::object();
      for (const auto& t : terms) value[std::string(name(t.gen))] = t.coeff;
      pairs.push_back({{"a", name(a)}, {"b", name(b)}, {"value", value}});
    }
  }
  return {{"p", p()}, {"alpha", alpha_}, {"pairs", pairs}};
}

AxiomReport check_axioms(const SuperAlgebra& A) {
  const PrimeField& F = A.field();
  AxiomReport report;
  const auto gens = all_generators();

  for (auto a : gens) {
    for (auto b : gens) {
      const int s = koszul_sign(parity(a), parity(b));
      const auto& ab = A.bracket(a, b);
      const auto& ba = A.bracket(b, a);
      for (auto g : gens) {
        // [a,b] + (-1)^{|a||b|} [b,a] = 0
        const Residue rhs = s == 1 ? ba[g] : F.neg(ba[g]);
        if (F.add(ab[g], rhs) != 0) {
          report.violations.push_back("antisymmetry (" + std::string(name(a)) + "," +
                                      std::string(name(b)) + ")");
          break;
        }
      }
    }
  }

  for (auto a : gens) {
    for (auto b : gens) {
      for (auto c : gens) {
        // (-1)^{|a||c|}[a,[b,c]] + (-1)^{|b||a|}[b,[c,a]] + (-1)^{|c||b|}[c,[a,b]] = 0
        AlgebraElement total;
        auto accumulate = [&](Generator x, Generator y, Generator z, int sign) {
          const AlgebraElement inner = A.bracket(y, z);
          const AlgebraElement outer = A.bracket(AlgebraElement::basis(x), inner);
          for (auto g : gens) {
            total[g] = F.add(total[g], sign == 1 ? outer[g] : F.neg(outer[g]));
          }
        };
        accumulate(a, b, c, koszul_sign(parity(a), parity(c)));
        accumulate(b, c, a, koszul_sign(parity(b), parity(a)));
        accumulate(c, a, b, koszul_sign(parity(c), parity(b)));
        if (!total.is_zero()) {
          report.violations.push_back("jacobi (" + std::string(name(a)) + "," +
                                      std::string(name(b)) + "," + std::string(name(c)) + ")");
        }
      }
    }
  }

  for (auto a : gens) {
    for (auto b : gens) {
      const Weight target = add(F, A.weight_of(a), A.weight_of(b));
      for (const auto& t : A.bracket_terms(a, b)) {
        if (A.weight_of(t.gen) != target) {
          report.violations.push_back("weight (" + std::string(name(a)) + "," +
                                      std::string(name(b)) + ") -> " + std::string(name(t.gen)));
        }
      }
    }
  }

  for (auto a : gens) {
    if (parity(a) != Parity::Even) continue;
    const Matrix17 ad = ad_matrix(A, a);
    Matrix17 power = ad;
    for (std::uint32_t k = 1; k < A.p(); ++k) power = multiply(F, power, ad);
    const AlgebraElement ap = A.pmap(a);
    Matrix17 expected{};
    for (auto g : gens) {
      if (ap[g] == 0) continue;
      const Matrix17 adg = ad_matrix(A, g);
      for (std::size_t i = 0; i < kNumGenerators; ++i) {
        for (std::size_t j = 0; j < kNumGenerators; ++j) {
          expected[i][j] = F.add(expected[i][j], F.mul(ap[g], adg[i][j]));
        }
      }
    }
    if (power != expected) {
      report.violations.push_back("restrictedness ad(" + std::string(name(a)) + ")^p");
    }
  }
  return report;
}

}  // namespace d21
