#include "d21/enveloping.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace d21 {
namespace {

// PBW position: f1 < f2 < f3 < y1 < y2 < y3 < y4 < h* < e* < x*.
constexpr std::array<std::uint8_t, kNumGenerators> kOrder = {
    7, 8, 9,             // h1 h2 h3
    10, 11, 12,          // e1 e2 e3
    0, 1, 2,             // f1 f2 f3
    13, 14, 15, 16,      // x1..x4
    3, 4, 5, 6};         // y1..y4

constexpr std::uint8_t order_of(Generator g) { return kOrder[index(g)]; }

constexpr bool is_f(Generator g) {
  return g == Generator::f1 || g == Generator::f2 || g == Generator::f3;
}
constexpr bool is_y(Generator g) { return index(g) >= index(Generator::y1); }
constexpr bool is_pbw_letter(Generator g) { return is_f(g) || is_y(g); }
constexpr bool is_h(Generator g) { return index(g) <= index(Generator::h3); }
constexpr std::size_t f_slot(Generator g) { return index(g) - index(Generator::f1); }
constexpr std::size_t y_slot(Generator g) { return index(g) - index(Generator::y1); }  // j_{slot+1}

// y_j corresponds to bit (3 - (j-1)) in theta.bits.
constexpr std::uint8_t y_bit(Generator g) {
  return static_cast<std::uint8_t>(1u << (3 - y_slot(g)));
}

ModuleVector from_unsorted(std::uint32_t p, std::vector<ModuleVector::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  ModuleVector out(p);
  const PrimeField& F = out.field();
  std::size_t i = 0;
  while (i < terms.size()) {
    std::size_t j = i;
    std::uint64_t acc = 0;
    while (j < terms.size() && terms[j].first == terms[i].first) acc += terms[j++].second;
    const Residue c = static_cast<Residue>(acc % F.modulus());
    if (c != 0) out.add_term(terms[i].first, c);
    i = j;
  }
  return out;
}

}  // namespace

std::string Theta::to_string() const {
  std::ostringstream os;
  os << '(' << j(1) << ',' << j(2) << ',' << j(3) << ',' << j(4) << ')';
  return os.str();
}

PBWMonomial PBWMonomial::from_index(std::size_t idx, std::uint32_t p) {
  PBWMonomial m;
  m.theta.bits = static_cast<std::uint8_t>(idx % 16);
  std::size_t rest = idx / 16;
  m.f_exp[2] = static_cast<std::uint32_t>(rest % p);
  rest /= p;
  m.f_exp[1] = static_cast<std::uint32_t>(rest % p);
  m.f_exp[0] = static_cast<std::uint32_t>(rest / p);
  return m;
}

std::vector<Generator> PBWMonomial::word() const {
  std::vector<Generator> w;
  for (std::size_t k = 0; k < 3; ++k) {
    w.insert(w.end(), f_exp[k], generator_at(d21::index(Generator::f1) + k));
  }
  for (unsigned k = 1; k <= 4; ++k) {
    if (theta.j(k)) w.push_back(generator_at(d21::index(Generator::y1) + k - 1));
  }
  return w;
}

std::string PBWMonomial::to_string() const {
  std::ostringstream os;
  os << "f1^" << f_exp[0] << " f2^" << f_exp[1] << " f3^" << f_exp[2] << " y^"
     << theta.to_string() << " v";
  return os.str();
}

ModuleVector ModuleVector::basis(std::uint32_t p, std::size_t idx, Residue c) {
  ModuleVector v(p);
  v.add_term(idx, c);
  return v;
}

Residue ModuleVector::coeff(std::size_t idx) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), idx,
                             [](const Term& t, std::size_t i) { return t.first < i; });
  return (it != terms_.end() && it->first == idx) ? it->second : 0;
}

void ModuleVector::add_term(std::size_t idx, Residue c) {
  c %= field_.modulus();
  if (c == 0) return;
  const auto key = static_cast<std::uint32_t>(idx);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, std::uint32_t i) { return t.first < i; });
  if (it != terms_.end() && it->first == key) {
    it->second = field_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {key, c});
  }
}

void ModuleVector::axpy(Residue c, const ModuleVector& other) {
  if (!(field_ == other.field_)) throw FieldError("module vectors over different fields");
  c %= field_.modulus();
  if (c == 0 || other.terms_.empty()) return;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back({b->first, field_.mul(c, b->second)});
      ++b;
    } else {
      const Residue s = field_.add(a->second, field_.mul(c, b->second));
      if (s != 0) merged.push_back({a->first, s});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
}

ModuleVector ModuleVector::scaled(Residue c) const {
  ModuleVector out(field_.modulus());
  out.axpy(c, *this);
  return out;
}

Weight weight_of_monomial(const PrimeField& F, const PBWMonomial& m, const HighestWeight& lambda) {
  const auto& th = m.theta;
  const std::int64_t j1 = th.j(1), j2 = th.j(2), j3 = th.j(3), j4 = th.j(4);
  const std::array<std::int64_t, 3> shift = {-j1 - j2 - j3 - j4, j1 + j2 - j3 - j4,
                                             j1 - j2 + j3 - j4};
  Weight w;
  for (std::size_t k = 0; k < 3; ++k) {
    w.coords[k] = F.reduce(static_cast<std::int64_t>(lambda.lambda[k]) -
                           2 * static_cast<std::int64_t>(m.f_exp[k]) + shift[k]);
  }
  return w;
}

std::vector<Weight> target_weights(const PrimeField& F) {
  std::vector<Weight> out;
  out.push_back(Weight{});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::int64_t s : {2, -2}) {
      Weight w;
      w.coords[i] = F.reduce(s);
      out.push_back(w);
    }
  }
  for (std::int64_t a : {1, -1}) {
    for (std::int64_t b : {1, -1}) {
      for (std::int64_t c : {1, -1}) out.push_back(Weight{{F.reduce(a), F.reduce(b), F.reduce(c)}});
    }
  }
  return out;
}

bool is_target_weight(const PrimeField& F, const Weight& beta) {
  const auto all = target_weights(F);
  return std::find(all.begin(), all.end(), beta) != all.end();
}

TargetWeightBasis target_weight_basis(const PrimeField& F, const Weight& beta,
                                      const HighestWeight& lambda) {
  TargetWeightBasis out;
  out.beta = beta;
  out.is_target = is_target_weight(F, beta);
  for (std::uint8_t bits = 0; bits < Theta::kCount; ++bits) {
    const Theta th{bits};
    const std::int64_t j1 = th.j(1), j2 = th.j(2), j3 = th.j(3), j4 = th.j(4);
    const std::array<std::int64_t, 3> shift = {-j1 - j2 - j3 - j4, j1 + j2 - j3 - j4,
                                               j1 - j2 + j3 - j4};
    PBWMonomial m;
    m.theta = th;
    for (std::size_t k = 0; k < 3; ++k) {
      const std::int64_t num = static_cast<std::int64_t>(lambda.lambda[k]) -
                               static_cast<std::int64_t>(beta.coords[k]) + shift[k];
      m.f_exp[k] = F.half(F.reduce(num));
    }
    out.entries[bits] = {th, m};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Straightening

Straightener::Straightener(const SuperAlgebra& A, HighestWeight lambda, Character chi)
    : algebra_(&A), lambda_(lambda), chi_(chi) {}

const ModuleVector& Straightener::apply(Generator g, std::size_t idx) {
  const std::uint64_t key = static_cast<std::uint64_t>(idx) * kNumGenerators + index(g);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  const PrimeField& F = algebra_->field();
  const std::uint32_t p = F.modulus();
  if (++depth_ > 100000) throw ConsistencyError("straightening recursion too deep");

  ModuleVector out(p);
  const PBWMonomial m = PBWMonomial::from_index(idx, p);

  if (idx == 0) {
    if (is_h(g)) {
      out.add_term(0, lambda_.lambda[index(g)]);
    } else if (is_f(g)) {
      PBWMonomial n;
      n.f_exp[f_slot(g)] = 1;
      out.add_term(n.index(p), 1);
    } else if (is_y(g)) {
      PBWMonomial n;
      n.theta.bits = y_bit(g);
      out.add_term(n.index(p), 1);
    }
    // e_i, x_i annihilate v
  } else {
    // leading letter w and the remainder
    Generator w = Generator::y4;
    PBWMonomial rest = m;
    bool found = false;
    for (std::size_t k = 0; k < 3 && !found; ++k) {
      if (m.f_exp[k] > 0) {
        w = generator_at(index(Generator::f1) + k);
        rest.f_exp[k] -= 1;
        found = true;
      }
    }
    for (unsigned k = 1; k <= 4 && !found; ++k) {
      if (m.theta.j(k)) {
        w = generator_at(index(Generator::y1) + k - 1);
        rest.theta.bits = static_cast<std::uint8_t>(rest.theta.bits & ~y_bit(w));
        found = true;
      }
    }

    if (is_pbw_letter(g) && order_of(g) < order_of(w)) {
      PBWMonomial n = m;
      if (is_f(g)) {
        n.f_exp[f_slot(g)] += 1;
      } else {
        n.theta.bits = static_cast<std::uint8_t>(n.theta.bits | y_bit(g));
      }
      out.add_term(n.index(p), 1);
    } else if (g == w) {
      if (is_f(g)) {
        PBWMonomial n = m;
        const std::size_t k = f_slot(g);
        n.f_exp[k] += 1;
        if (n.f_exp[k] == p) {
          n.f_exp[k] = 0;
          out.add_term(n.index(p), F.pow(chi_.chi_f[k], p));
        } else {
          out.add_term(n.index(p), 1);
        }
      }
      // odd square: y_j y_j = 0
    } else {
      // g w rest = (-1)^{|g||w|} w (g rest) + [g,w] rest
      const std::size_t rest_idx = rest.index(p);
      const Residue sign = koszul_sign(parity(g), parity(w)) == 1 ? 1 : F.neg(1);
      const ModuleVector& g_rest = apply(g, rest_idx);
      for (const auto& [j, c] : g_rest.terms()) out.axpy(F.mul(sign, c), apply(w, j));
      for (const auto& t : algebra_->bracket_terms(g, w)) out.axpy(t.coeff, apply(t.gen, rest_idx));
    }
  }
  --depth_;
  return memo_.emplace(key, std::move(out)).first->second;
}

ModuleVector Straightener::apply(Generator g, const ModuleVector& v) {
  ModuleVector out(algebra_->p());
  for (const auto& [j, c] : v.terms()) out.axpy(c, apply(g, j));
  return out;
}

ModuleVector Straightener::normal_form(std::span<const Generator> word, Residue scalar,
                                       RewriteOrder order, std::uint64_t seed) {
  if (order != RewriteOrder::Innermost) return rewrite(word, scalar, order, seed);
  const std::uint32_t p = algebra_->p();
  ModuleVector v = ModuleVector::basis(p, 0, scalar);
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = apply(*it, v);
  return v;
}

ModuleVector Straightener::rewrite(std::span<const Generator> word, Residue scalar,
                                   RewriteOrder order, std::uint64_t seed) {
  using Word = std::vector<Generator>;
  const PrimeField& F = algebra_->field();
  const std::uint32_t p = F.modulus();

  enum class Kind { Absorb, OddSquare, Power, Swap };
  struct Redex {
    Kind kind;
    std::size_t pos;
  };

  std::map<Word, Residue> pending;
  auto push = [&](Word w, Residue c) {
    if (c == 0) return;
    auto [it, inserted] = pending.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second = F.add(it->second, c);
      if (it->second == 0) pending.erase(it);
    }
  };
  push(Word(word.begin(), word.end()), F.reduce(scalar));

  std::mt19937_64 rng(seed);
  std::vector<ModuleVector::Term> result;
  std::vector<Redex> redexes;
  last_steps_ = 0;

  while (!pending.empty()) {
    auto it = pending.begin();
    if (order == RewriteOrder::Random && pending.size() > 1) {
      std::advance(it, static_cast<std::ptrdiff_t>(rng() % pending.size()));
    }
    Word w = it->first;
    const Residue c = it->second;
    pending.erase(it);

    redexes.clear();
    const std::size_t n = w.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (w[k] == w[k + 1] && parity(w[k]) == Parity::Odd) {
        redexes.push_back({Kind::OddSquare, k});
      } else if (order_of(w[k]) > order_of(w[k + 1])) {
        redexes.push_back({Kind::Swap, k});
      }
    }
    for (std::size_t k = 0; k < n;) {
      std::size_t run = 1;
      while (k + run < n && w[k + run] == w[k]) ++run;
      if (is_f(w[k]) && run >= p) redexes.push_back({Kind::Power, k});
      k += run;
    }
    if (n > 0 && !is_pbw_letter(w[n - 1])) redexes.push_back({Kind::Absorb, n - 1});

    if (redexes.empty()) {
      PBWMonomial m;
      for (auto g : w) {
        if (is_f(g)) {
          m.f_exp[f_slot(g)] += 1;
        } else {
          m.theta.bits = static_cast<std::uint8_t>(m.theta.bits | y_bit(g));
        }
      }
      result.push_back({static_cast<std::uint32_t>(m.index(p)), c});
      continue;
    }

    if (++last_steps_ > kStepLimit) throw ConsistencyError("rewrite step limit exceeded");

    Redex r;
    if (order == RewriteOrder::Random) {
      r = redexes[rng() % redexes.size()];
    } else {
      r = *std::min_element(redexes.begin(), redexes.end(),
                            [](const Redex& a, const Redex& b) { return a.pos < b.pos; });
    }

    const auto pos = static_cast<std::ptrdiff_t>(r.pos);
    switch (r.kind) {
      case Kind::Absorb: {
        const Generator last = w.back();
        if (is_h(last)) {
          w.pop_back();
          push(std::move(w), F.mul(c, lambda_.lambda[index(last)]));
        }
        break;
      }
      case Kind::OddSquare:
        break;
      case Kind::Power: {
        const Residue factor = F.pow(chi_.chi_f[f_slot(w[r.pos])], p);
        w.erase(w.begin() + pos, w.begin() + pos + static_cast<std::ptrdiff_t>(p));
        push(std::move(w), F.mul(c, factor));
        break;
      }
      case Kind::Swap: {
        const Generator a = w[r.pos];
        const Generator b = w[r.pos + 1];
        for (const auto& t : algebra_->bracket_terms(a, b)) {
          Word shorter;
          shorter.reserve(n - 1);
          shorter.insert(shorter.end(), w.begin(), w.begin() + pos);
          shorter.push_back(t.gen);
          shorter.insert(shorter.end(), w.begin() + pos + 2, w.end());
          push(std::move(shorter), F.mul(c, t.coeff));
        }
        std::swap(w[r.pos], w[r.pos + 1]);
        const Residue sign = koszul_sign(parity(a), parity(b)) == 1 ? 1 : F.neg(1);
        push(std::move(w), F.mul(c, sign));
        break;
      }
    }
  }
  return from_unsorted(p, result);
}

// ---------------------------------------------------------------------------
// Verma module

VermaModule::VermaModule(const SuperAlgebra& A, HighestWeight lambda, Character chi,
                         ActionScope scope)
    : algebra_(A), lambda_(lambda), chi_(chi), scope_(scope) {}

VermaModule VermaModule::build(const SuperAlgebra& A, HighestWeight lambda, Character chi,
                               ActionScope scope) {
  const PrimeField& F = A.field();
  for (std::size_t k = 0; k < 3; ++k) {
    lambda.lambda[k] %= F.modulus();
    chi.chi_f[k] %= F.modulus();
    // lambda_i^p - lambda_i = chi(h_i)^p = 0 always holds over F_p
    if (F.sub(F.pow(lambda.lambda[k], F.modulus()), lambda.lambda[k]) != 0) {
      throw ConsistencyError("highest weight outside Lambda_chi");
    }
  }
  VermaModule M(A, lambda, chi, scope);
  const std::size_t dim = M.dim();
  const std::uint32_t p = F.modulus();

  for (auto g : all_generators()) {
    M.target_bases_[index(g)] = target_weight_basis(F, A.weight_of(g), lambda);
  }

  M.built_.assign(dim, scope == ActionScope::Full);
  if (scope == ActionScope::TargetWeights) {
    for (const auto& beta : target_weights(F)) {
      const auto basis = target_weight_basis(F, beta, lambda);
      for (const auto& e : basis.entries) M.built_[e.monomial.index(p)] = true;
    }
  }

  Straightener s(A, lambda, chi);
  for (auto g : all_generators()) {
    ActionMatrix& mat = M.action_[index(g)];
    mat.col_start.assign(dim + 1, 0);
    std::vector<Generator> word;
    for (std::size_t j = 0; j < dim; ++j) {
      mat.col_start[j] = static_cast<std::uint32_t>(mat.rows.size());
      if (!M.built_[j]) continue;
      word = PBWMonomial::from_index(j, p).word();
      word.insert(word.begin(), g);
      const ModuleVector col = s.normal_form(word, 1);
      for (const auto& [r, c] : col.terms()) {
        mat.rows.push_back(r);
        mat.values.push_back(c);
      }
    }
    mat.col_start[dim] = static_cast<std::uint32_t>(mat.rows.size());
  }
  return M;
}

ModuleVector VermaModule::act(Generator g, std::size_t idx) const {
  if (!built_.at(idx)) {
    throw ConsistencyError("action column " + std::to_string(idx) + " outside build scope");
  }
  const ActionMatrix& mat = action_[index(g)];
  ModuleVector out(p());
  for (std::uint32_t k = mat.col_start[idx]; k < mat.col_start[idx + 1]; ++k) {
    out.add_term(mat.rows[k], mat.values[k]);
  }
  return out;
}

ModuleVector VermaModule::act(Generator g, const ModuleVector& m) const {
  const ActionMatrix& mat = action_[index(g)];
  const PrimeField& F = field();
  std::vector<ModuleVector::Term> terms;
  for (const auto& [j, c] : m.terms()) {
    if (!built_.at(j)) {
      throw ConsistencyError("action column " + std::to_string(j) + " outside build scope");
    }
    for (std::uint32_t k = mat.col_start[j]; k < mat.col_start[j + 1]; ++k) {
      terms.push_back({mat.rows[k], F.mul(c, mat.values[k])});
    }
  }
  return from_unsorted(p(), terms);
}

Weight VermaModule::weight_of_basis(std::size_t idx) const {
  return weight_of_monomial(field(), PBWMonomial::from_index(idx, p()), lambda_);
}

// ---------------------------------------------------------------------------
// Module axioms

ModuleAxiomReport check_module_axioms(const VermaModule& M) {
  if (M.scope() != ActionScope::Full) {
    throw ParameterError("module axiom check needs a fully built module");
  }
  ModuleAxiomReport report;
  const SuperAlgebra& A = M.algebra();
  const PrimeField& F = M.field();
  const std::int64_t p = F.modulus();
  const std::size_t dim = M.dim();

  std::vector<std::int64_t> acc(dim, 0);
  std::vector<std::uint32_t> touched;
  touched.reserve(256);
  auto bump = [&](std::uint32_t r, std::int64_t v) {
    if (acc[r] == 0) touched.push_back(r);
    acc[r] += v;
    if (acc[r] == 0) acc[r] = p;  // keep it marked as touched
  };
  auto flush_nonzero = [&]() {
    bool bad = false;
    for (auto r : touched) {
      if (acc[r] % p != 0) bad = true;
      acc[r] = 0;
    }
    touched.clear();
    return bad;
  };

  const auto gens = all_generators();
  for (auto a : gens) {
    const ActionMatrix& ma = M.action(a);
    for (auto b : gens) {
      const ActionMatrix& mb = M.action(b);
      const std::int64_t s = koszul_sign(parity(a), parity(b));
      const auto& br = A.bracket_terms(a, b);
      for (std::size_t j = 0; j < dim; ++j) {
        // a(b v) - s b(a v) - [a,b] v
        for (auto k = mb.col_start[j]; k < mb.col_start[j + 1]; ++k) {
          const std::int64_t bv = mb.values[k];
          const auto col = mb.rows[k];
          for (auto l = ma.col_start[col]; l < ma.col_start[col + 1]; ++l) {
            bump(ma.rows[l], bv * ma.values[l]);
          }
        }
        for (auto k = ma.col_start[j]; k < ma.col_start[j + 1]; ++k) {
          const std::int64_t av = ma.values[k];
          const auto col = ma.rows[k];
          for (auto l = mb.col_start[col]; l < mb.col_start[col + 1]; ++l) {
            bump(mb.rows[l], -s * av * mb.values[l]);
          }
        }
        for (const auto& t : br) {
          const ActionMatrix& mt = M.action(t.gen);
          for (auto l = mt.col_start[j]; l < mt.col_start[j + 1]; ++l) {
            bump(mt.rows[l], -static_cast<std::int64_t>(t.coeff) * mt.values[l]);
          }
        }
        if (flush_nonzero()) {
          report.violations.push_back("commutator (" + std::string(name(a)) + "," +
                                      std::string(name(b)) + ") at column " + std::to_string(j));
          break;
        }
      }
    }
  }

  // restrictedness and odd squares, column by column
  for (auto g : gens) {
    std::uint32_t power = parity(g) == Parity::Odd ? 2 : F.modulus();
    for (std::size_t j = 0; j < dim; ++j) {
      ModuleVector v = ModuleVector::basis(F.modulus(), j);
      for (std::uint32_t k = 0; k < power; ++k) v = M.act(g, v);
      ModuleVector expected(F.modulus());
      const auto gi = index(g);
      if (g == Generator::h1 || g == Generator::h2 || g == Generator::h3) {
        expected = M.act(g, j);
      } else if (gi >= index(Generator::f1) && gi <= index(Generator::f3)) {
        const Residue c = F.pow(M.chi().chi_f[gi - index(Generator::f1)], F.modulus());
        expected.add_term(j, c);
      }
      if (!(v == expected)) {
        report.violations.push_back(std::string(parity(g) == Parity::Odd ? "odd square " : "restrictedness ") +
                                    std::string(name(g)) + " at column " + std::to_string(j));
        break;
      }
    }
  }

  // weight grading
  std::vector<Weight> weights(dim);
  for (std::size_t j = 0; j < dim; ++j) weights[j] = M.weight_of_basis(j);
  for (auto g : gens) {
    const ActionMatrix& mg = M.action(g);
    const Weight shift = A.weight_of(g);
    bool bad = false;
    for (std::size_t j = 0; j < dim && !bad; ++j) {
      const Weight target = add(F, weights[j], shift);
      for (auto k = mg.col_start[j]; k < mg.col_start[j + 1]; ++k) {
        if (weights[mg.rows[k]] != target) {
          report.violations.push_back("weight grading " + std::string(name(g)) + " at column " +
                                      std::to_string(j));
          bad = true;
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace d21
