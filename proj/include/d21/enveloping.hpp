#ifndef D21_ENVELOPING_HPP
#define D21_ENVELOPING_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "d21/algebra.hpp"
#include "d21/field.hpp"

namespace d21 {

/// chi on g_0 with chi(e_i) = chi(h_i) = 0; only the f-values are free.
struct Character {
  std::array<Residue, 3> chi_f{0, 0, 0};

  bool is_zero() const { return chi_f[0] == 0 && chi_f[1] == 0 && chi_f[2] == 0; }
  friend bool operator==(const Character&, const Character&) = default;
};

/// lambda = lambda_1 eps_1 + lambda_2 eps_2 + lambda_3 eps_3.
struct HighestWeight {
  std::array<Residue, 3> lambda{0, 0, 0};

  Weight as_weight() const { return Weight{lambda}; }
  friend bool operator==(const HighestWeight&, const HighestWeight&) = default;
};

/// theta = (j1,j2,j3,j4) in {0,1}^4, packed as j1*8 + j2*4 + j3*2 + j4.
struct Theta {
  std::uint8_t bits = 0;

  static constexpr std::size_t kCount = 16;
  static Theta from_bits(unsigned j1, unsigned j2, unsigned j3, unsigned j4) {
    return Theta{static_cast<std::uint8_t>(j1 * 8 + j2 * 4 + j3 * 2 + j4)};
  }
  /// j_k for k = 1..4.
  unsigned j(unsigned k) const { return (bits >> (4 - k)) & 1u; }
  unsigned sum() const { return j(1) + j(2) + j(3) + j(4); }
  Parity parity() const { return sum() % 2 ? Parity::Odd : Parity::Even; }

  bool in_J1() const { return sum() % 2 == 0; }
  bool in_J2() const { return sum() == 2; }
  bool in_J3() const { return sum() % 2 == 1; }
  bool in_J4() const { return sum() == 3; }

  std::string to_string() const;
  friend bool operator==(const Theta&, const Theta&) = default;
};

/// f1^i1 f2^i2 f3^i3 y1^j1 y2^j2 y3^j3 y4^j4 (x) v.
struct PBWMonomial {
  std::array<std::uint32_t, 3> f_exp{0, 0, 0};
  Theta theta;

  std::size_t index(std::uint32_t p) const {
    return ((static_cast<std::size_t>(f_exp[0]) * p + f_exp[1]) * p + f_exp[2]) * 16 + theta.bits;
  }
  static PBWMonomial from_index(std::size_t idx, std::uint32_t p);
  /// v is taken even, so the parity is that of the y-part.
  Parity parity() const { return theta.parity(); }
  /// The generator word, in PBW order, that produces this monomial from v.
  std::vector<Generator> word() const;
  std::string to_string() const;

  friend bool operator==(const PBWMonomial&, const PBWMonomial&) = default;
};

inline std::size_t module_dimension(std::uint32_t p) { return 16ull * p * p * p; }

/// Sparse vector in Z_chi(lambda): sorted (monomial index, nonzero coeff).
class ModuleVector {
 public:
  using Term = std::pair<std::uint32_t, Residue>;

  explicit ModuleVector(std::uint32_t p) : field_(p) {}
  static ModuleVector basis(std::uint32_t p, std::size_t idx, Residue c = 1);

  const PrimeField& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Residue coeff(std::size_t idx) const;

  /// this += c * other
  void axpy(Residue c, const ModuleVector& other);
  void add_term(std::size_t idx, Residue c);
  ModuleVector scaled(Residue c) const;
  ModuleVector& operator+=(const ModuleVector& o) {
    axpy(1, o);
    return *this;
  }
  ModuleVector& operator-=(const ModuleVector& o) {
    axpy(field_.neg(1), o);
    return *this;
  }

  friend bool operator==(const ModuleVector& a, const ModuleVector& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  PrimeField field_;
  std::vector<Term> terms_;
};

/// (-2 i1 - j1 - j2 - j3 - j4 + l1, -2 i2 + j1 + j2 - j3 - j4 + l2, -2 i3 + j1 - j2 + j3 - j4 + l3)
Weight weight_of_monomial(const PrimeField& F, const PBWMonomial& m, const HighestWeight& lambda);

/// The 15 weights carried by generators of g.
std::vector<Weight> target_weights(const PrimeField& F);
bool is_target_weight(const PrimeField& F, const Weight& beta);

struct TargetBasisEntry {
  Theta theta;
  PBWMonomial monomial;
};

/// w_beta^theta for every theta in J, indexed by theta.bits.
struct TargetWeightBasis {
  Weight beta;
  bool is_target = false;
  std::array<TargetBasisEntry, Theta::kCount> entries;
};

/// Exponents are the smallest nonnegative residues of the halved formulas.
TargetWeightBasis target_weight_basis(const PrimeField& F, const Weight& beta,
                                      const HighestWeight& lambda);

enum class RewriteOrder { Innermost, Leftmost, Random };

/// PBW straightening in u_chi(g) applied to v.
///
/// Rules: adjacent inversions a b -> (-1)^{|a||b|} b a + [a,b]; e_i and x_i at
/// the right end kill the term, h_i there contributes lambda_i; a run of p
/// equal f_i becomes chi(f_i)^p; an odd letter squared vanishes. Innermost
/// order is memoized and is what module construction uses. Not thread-safe.
class Straightener {
 public:
  Straightener(const SuperAlgebra& A, HighestWeight lambda, Character chi);

  ModuleVector normal_form(std::span<const Generator> word, Residue scalar,
                           RewriteOrder order = RewriteOrder::Innermost, std::uint64_t seed = 0);

  /// Normal form of g * (monomial idx), memoized.
  const ModuleVector& apply(Generator g, std::size_t idx);
  ModuleVector apply(Generator g, const ModuleVector& v);

  /// Rewrite steps taken by the last explicit (non-innermost) normal_form call.
  std::size_t last_step_count() const { return last_steps_; }

  static constexpr std::size_t kStepLimit = 50'000'000;

 private:
  ModuleVector rewrite(std::span<const Generator> word, Residue scalar, RewriteOrder order,
                       std::uint64_t seed);

  const SuperAlgebra* algebra_;
  HighestWeight lambda_;
  Character chi_;
  std::unordered_map<std::uint64_t, ModuleVector> memo_;
  std::size_t depth_ = 0;
  std::size_t last_steps_ = 0;
};

/// Which columns of the action matrices get computed.
enum class ActionScope {
  Full,           ///< every basis monomial
  TargetWeights,  ///< only monomials of the 15 target weight spaces
};

/// Column-compressed action matrix of one generator.
struct ActionMatrix {
  std::vector<std::uint32_t> col_start;  // size dim + 1
  std::vector<std::uint32_t> rows;
  std::vector<Residue> values;

  std::size_t nnz() const { return rows.size(); }
};

/// Baby Verma module Z_chi(lambda) with precomputed sparse action matrices.
class VermaModule {
 public:
  static VermaModule build(const SuperAlgebra& A, HighestWeight lambda, Character chi,
                           ActionScope scope = ActionScope::Full);

  const SuperAlgebra& algebra() const { return algebra_; }
  const PrimeField& field() const { return algebra_.field(); }
  std::uint32_t p() const { return algebra_.p(); }
  std::size_t dim() const { return module_dimension(p()); }
  const HighestWeight& lambda() const { return lambda_; }
  const Character& chi() const { return chi_; }
  ActionScope scope() const { return scope_; }

  bool has_column(std::size_t idx) const { return built_[idx]; }
  const ActionMatrix& action(Generator g) const { return action_[index(g)]; }
  /// Throws ConsistencyError when m touches a column outside the build scope.
  ModuleVector act(Generator g, const ModuleVector& m) const;
  ModuleVector act(Generator g, std::size_t idx) const;

  Weight weight_of_basis(std::size_t idx) const;
  const TargetWeightBasis& target_basis(Generator g) const { return target_bases_[index(g)]; }
  /// Basis of the weight space of g, for weight 0 use target_basis(h1).
  std::size_t target_monomial(Generator g, Theta theta) const {
    return target_bases_[index(g)].entries[theta.bits].monomial.index(p());
  }

 private:
  VermaModule(const SuperAlgebra& A, HighestWeight lambda, Character chi, ActionScope scope);

  SuperAlgebra algebra_;
  HighestWeight lambda_;
  Character chi_;
  ActionScope scope_;
  std::vector<bool> built_;
  std::array<ActionMatrix, kNumGenerators> action_;
  std::array<TargetWeightBasis, kNumGenerators> target_bases_;
};

struct ModuleAxiomReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Super-commutator identity for all generator pairs, restrictedness
/// (f^p = chi(f)^p Id, e^p = 0, h^p = h), odd squares zero, weight grading.
/// Requires ActionScope::Full.
ModuleAxiomReport check_module_axioms(const VermaModule& M);

}  // namespace d21

#endif  // D21_ENVELOPING_HPP
