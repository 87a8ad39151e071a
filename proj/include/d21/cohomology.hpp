#ifndef D21_COHOMOLOGY_HPP
#define D21_COHOMOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "d21/algebra.hpp"
#include "d21/enveloping.hpp"
#include "d21/linalg.hpp"
#include "json.hpp"

namespace d21 {

/// A parity-homogeneous linear map g -> Z_chi(lambda), one image per generator.
struct DerivationMap {
  Parity parity = Parity::Even;
  std::vector<ModuleVector> images;

  static DerivationMap zero(Parity parity, std::uint32_t p);
  const ModuleVector& operator[](Generator g) const { return images[index(g)]; }
  ModuleVector& operator[](Generator g) { return images[index(g)]; }
  bool is_zero() const;

  friend bool operator==(const DerivationMap&, const DerivationMap&) = default;
};

nlohmann::json to_json(const DerivationMap& phi);

using GeneratorPair = std::pair<Generator, Generator>;

/// Unordered pairs {a,b} with a != b, then (y,y) for every odd y.
std::vector<GeneratorPair> equation_pairs();
/// Every ordered pair (a,b), diagonal included.
std::vector<GeneratorPair> all_ordered_pairs();

/// phi([x,y]) - (-1)^{|phi||x|} x phi(y) + (-1)^{|y|(|phi|+|x|)} y phi(x)
ModuleVector derivation_residual(const DerivationMap& phi, const VermaModule& M, Generator x,
                                 Generator y);
/// Pairs (including every ordered pair) on which the identity fails.
std::vector<GeneratorPair> derivation_violations(const DerivationMap& phi, const VermaModule& M);

/// D_m(x) = (-1)^{|x||m|} x m; throws ParameterError if m is not homogeneous.
DerivationMap inner_derivation(const ModuleVector& m, const VermaModule& M);

/// Coordinates of 0-weight maps of one parity: phi(b) = sum c_{b,theta} w_{beta_b}^theta,
/// theta restricted to the parity |b| + |phi|. Generator-major, theta ascending.
class GradedLayout {
 public:
  struct Unknown {
    Generator gen;
    Theta theta;
    std::uint32_t monomial;
  };

  GradedLayout(const VermaModule& M, Parity phi_parity);

  Parity parity() const { return parity_; }
  std::size_t size() const { return unknowns_.size(); }
  const std::vector<Unknown>& unknowns() const { return unknowns_; }
  std::optional<std::size_t> find(Generator g, std::size_t monomial) const;

  /// nullopt when phi has support outside the graded coordinates.
  std::optional<DenseVector> try_encode(const DerivationMap& phi) const;
  DenseVector encode(const DerivationMap& phi) const;
  DerivationMap decode(std::span<const Residue> coords) const;

 private:
  Parity parity_;
  std::uint32_t p_;
  std::vector<Unknown> unknowns_;
};

enum class EquationSet { UnorderedPlusOddDiagonal, AllOrderedPairs };

struct GradedSystem {
  SparseMatrix matrix;
  std::vector<GeneratorPair> row_pair;  // source pair of each row
};

/// One row per (pair, monomial) in the weight space beta_a + beta_b.
GradedSystem graded_system(const VermaModule& M, const GradedLayout& layout,
                           EquationSet equations = EquationSet::UnorderedPlusOddDiagonal);

/// Shuffles applied before elimination; the result must not depend on them.
struct SolveOptions {
  std::uint64_t row_shuffle_seed = 0;
  std::uint64_t col_shuffle_seed = 0;
  EquationSet equations = EquationSet::UnorderedPlusOddDiagonal;
};

/// Der(g, M)_(0) of the given parity, in graded coordinates.
Subspace zero_weight_derivations(const VermaModule& M, Parity parity,
                                 const SolveOptions& options = {});
/// span{ D_{w_0^theta} } with theta of matching parity, in graded coordinates.
Subspace zero_weight_inner_space(const VermaModule& M, Parity parity);

struct H1Result {
  std::uint32_t p = 0;
  Residue alpha = 0;
  HighestWeight lambda;
  Character chi;
  std::size_t dim_even = 0;
  std::size_t dim_odd = 0;
  std::size_t der_even = 0, der_odd = 0;      // dim Der_(0) per parity
  std::size_t inner_even = 0, inner_odd = 0;  // dim Ider_(0) per parity
  std::vector<DerivationMap> representatives;

  bool is_zero() const { return dim_even == 0 && dim_odd == 0; }
};

/// Per parity: dim Der_(0) - dim Ider_(0), with canonical outer representatives,
/// each re-checked against the derivation identity.
H1Result h1(const VermaModule& M, const SolveOptions& options = {});
nlohmann::json to_json(const H1Result& r, bool with_representatives = true);

struct FullDerivationDims {
  std::size_t der = 0;
  std::size_t ider = 0;
};

/// Brute-force oracle with no weight restriction. Needs a fully built module and p <= 7.
FullDerivationDims full_derivation_dims(const VermaModule& M, Parity parity);

/// True iff phi is not inner. Throws ParameterError when phi is not a derivation.
bool is_outer(const DerivationMap& phi, const VermaModule& M);

enum class CompletionPath { ZeroExtension, UniqueCompletion, ParticularCompletion };
std::string_view name(CompletionPath path);

struct PsiResult {
  DerivationMap map;
  CompletionPath path = CompletionPath::ZeroExtension;
  std::size_t completion_freedom = 0;          // dim of the completion solution space
  std::vector<GeneratorPair> zero_extension_violations;
};

/// Number of free parameters of psi_k.
std::size_t psi_parameter_count(int k);
/// lambda (mod p) at which psi_k lives, with chi = 0.
HighestWeight psi_regime(int k, const PrimeField& F);

/// psi_1..psi_4 from their tabulated images; generators not listed are filled by
/// solving the graded system when the zero extension is not a derivation.
PsiResult psi(int k, std::span<const Residue> params, const VermaModule& M);

struct PsiVerification {
  int which = 0;
  bool passed = false;
  nlohmann::json report;
};

/// Derivation identity, outer-ness and membership in Der_(0) for psi_k
/// (psi_1 once per tabulated parameter), plus a parameter-count finding for psi_1.
PsiVerification verify_psi(int which, const VermaModule& M);

struct CheckReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// phi(h_i) = 0 for every phi in Der_(0), unless lambda = (2,-2,-2) and chi = 0,
/// where phi(h_i) lies on w_0^(1,1,1,1).
CheckReport check_lemma_h_images(const VermaModule& M);
/// chi(f_l)^p_{s,p-1} a_{-2eps_k}^theta = chi(f_k)^p_{t,p-1} a_{-2eps_l}^theta for k != l.
CheckReport check_f_coupling(const VermaModule& M);

}  // namespace d21

#endif  // D21_COHOMOLOGY_HPP
