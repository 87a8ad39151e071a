#ifndef D21_ALGEBRA_HPP
#define D21_ALGEBRA_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "d21/field.hpp"
#include "json.hpp"

namespace d21 {

/// Fixed enumeration of the 17 basis vectors of D(2,1;alpha).
enum class Generator : std::uint8_t {
  h1, h2, h3, e1, e2, e3, f1, f2, f3,
  x1, x2, x3, x4, y1, y2, y3, y4
};

inline constexpr std::size_t kNumGenerators = 17;

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
/// (-1)^{|a||b|} as a +1/-1 integer.
constexpr int koszul_sign(Parity a, Parity b) {
  return (a == Parity::Odd && b == Parity::Odd) ? -1 : 1;
}

constexpr std::size_t index(Generator g) { return static_cast<std::size_t>(g); }
constexpr Generator generator_at(std::size_t i) { return static_cast<Generator>(i); }

constexpr Parity parity(Generator g) {
  return index(g) >= index(Generator::x1) ? Parity::Odd : Parity::Even;
}

std::string_view name(Generator g);
std::string_view name(Parity p);
std::optional<Generator> generator_from_name(std::string_view s);

constexpr std::array<Generator, kNumGenerators> all_generators() {
  std::array<Generator, kNumGenerators> out{};
  for (std::size_t i = 0; i < kNumGenerators; ++i) out[i] = generator_at(i);
  return out;
}

/// beta_1 eps_1 + beta_2 eps_2 + beta_3 eps_3 with residue coordinates.
struct Weight {
  std::array<Residue, 3> coords{0, 0, 0};

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

Weight add(const PrimeField& F, const Weight& a, const Weight& b);
Weight negate(const PrimeField& F, const Weight& a);
std::string to_string(const Weight& w);

/// Dense coefficient vector over the 17 generators.
struct AlgebraElement {
  std::array<Residue, kNumGenerators> coeffs{};

  static AlgebraElement basis(Generator g) {
    AlgebraElement e;
    e.coeffs[index(g)] = 1;
    return e;
  }
  Residue operator[](Generator g) const { return coeffs[index(g)]; }
  Residue& operator[](Generator g) { return coeffs[index(g)]; }
  bool is_zero() const;
  /// Parity of the support, or nullopt when mixed (zero counts as even).
  std::optional<Parity> homogeneous_parity() const;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

/// One nonzero structure constant: [a,b] has coefficient `coeff` on `gen`.
struct BracketTerm {
  Generator gen;
  Residue coeff;
};

/// The restricted Lie superalgebra D(2,1;alpha) over F_p.
///
/// The bracket tensor is filled from the multiplication tables (sl(2)^3,
/// even-on-odd, odd-odd) and closed under super-antisymmetry; every pair not
/// reached that way brackets to zero. Immutable once built.
class SuperAlgebra {
 public:
  /// Throws FieldError for a bad modulus and ParameterError for alpha in {0, -1}.
  static SuperAlgebra build(std::uint32_t p, std::int64_t alpha);

  const PrimeField& field() const { return field_; }
  std::uint32_t p() const { return field_.modulus(); }
  Residue alpha() const { return alpha_; }

  const AlgebraElement& bracket(Generator a, Generator b) const {
    return table_[index(a) * kNumGenerators + index(b)];
  }
  /// Nonzero terms of [a,b], in generator order.
  const std::vector<BracketTerm>& bracket_terms(Generator a, Generator b) const {
    return terms_[index(a) * kNumGenerators + index(b)];
  }
  /// Bilinear extension to arbitrary elements.
  AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) const;

  /// p-map on the even part; throws ParameterError for odd generators.
  AlgebraElement pmap(Generator a) const;

  Weight weight_of(Generator g) const { return weights_[index(g)]; }

  /// Copy with coefficient of `target` in [a,b] shifted by delta (and the
  /// antisymmetric partner adjusted to match). Used for mutation testing.
  SuperAlgebra with_perturbation(Generator a, Generator b, Generator target,
                                 std::int64_t delta) const;

  /// {"pairs":[{"a":..,"b":..,"value":{gen: residue}}]} over nonzero ordered pairs.
  nlohmann::json bracket_json() const;

 private:
  SuperAlgebra(PrimeField field, Residue alpha);
  void set(Generator a, Generator b, std::initializer_list<std::pair<Generator, std::int64_t>> value);
  void refresh_terms();

  PrimeField field_;
  Residue alpha_;
  std::array<AlgebraElement, kNumGenerators * kNumGenerators> table_{};
  std::array<std::vector<BracketTerm>, kNumGenerators * kNumGenerators> terms_{};
  std::array<Weight, kNumGenerators> weights_{};
};

struct AxiomReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Super-antisymmetry, super-Jacobi on all triples, weight compatibility and
/// ad(a^[p]) = ad(a)^p for every even basis vector.
AxiomReport check_axioms(const SuperAlgebra& A);

}  // namespace d21

#endif  // D21_ALGEBRA_HPP
