#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biderive/algebra.hpp"

namespace biderive {

enum class Slot { Left, Right };

struct CheckFailure {
  std::string check;
  std::string witness;
};

struct WellDefinedReport {
  bool passed = true;
  std::vector<CheckFailure> failures;
};

/// A biderivation on a finitely presented localized algebra, stored as the
/// matrix of generator brackets {z_a, z_b} and evaluated everywhere else by
/// the characteristic-zero chain rule: derivations of a finitely generated
/// Q-algebra are determined by their generator values, one argument at a
/// time.
class BracketTable {
 public:
  /// Builds the table and runs the quotient compatibility check: for every
  /// relation p and variable z, the raw chain-rule values {p, z} and {z, p}
  /// must lie in the localized relation ideal. The report is cached; tables
  /// whose report failed refuse to evaluate brackets.
  static BracketTable make(AlgebraPtr alg,
                           std::vector<std::vector<RationalFunction>> entries) {
    BracketTable t;
    const std::size_t n = alg->nvars();
    if (entries.size() != n)
      throw error("bracket table must be square of the variable count");
    for (auto& row : entries) {
      if (row.size() != n)
        throw error("bracket table must be square of the variable count");
      for (auto& e : row) require_same_ambient(e.ambient(), alg->ambient());
    }
    t.alg_ = std::move(alg);
    t.entries_ = std::move(entries);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (!t.alg_->legal(t.entries_[a][b]))
          t.report_.failures.push_back(
              {"entry-denominator",
               "{" + t.var(a) + "," + t.var(b) + "} = " + t.entries_[a][b].str()});
      }
    t.run_well_defined_check();
    t.report_.passed = t.report_.failures.empty();
    return t;
  }

  /// All-zero table.
  static BracketTable trivial(const AlgebraPtr& alg) {
    std::vector<std::vector<RationalFunction>> e(
        alg->nvars(), std::vector<RationalFunction>(
                          alg->nvars(), RationalFunction::zero(alg->ambient())));
    return make(alg, std::move(e));
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const AmbientPtr& ambient() const { return alg_->ambient(); }
  std::size_t nvars() const { return alg_->nvars(); }
  const std::string& var(std::size_t i) const { return ambient()->var(i); }
  const RationalFunction& entry(std::size_t a, std::size_t b) const {
    return entries_[a][b];
  }
  const std::vector<std::vector<RationalFunction>>& entries() const {
    return entries_;
  }
  const WellDefinedReport& well_defined() const { return report_; }

  /// { f, g } by the chain rule, reduced to normal form modulo the
  /// relations. Arguments must have unit denominators.
  RationalFunction bracket(const RationalFunction& f,
                           const RationalFunction& g) const {
    require_usable();
    alg_->require_legal(f);
    alg_->require_legal(g);
    return alg_->reduce(bracket_raw(f, g));
  }

  /// Chain-rule value without reduction modulo the relations.
  RationalFunction bracket_raw(const RationalFunction& f,
                               const RationalFunction& g) const {
    const AmbientPtr& amb = ambient();
    require_same_ambient(f.ambient(), amb);
    require_same_ambient(g.ambient(), amb);
    std::vector<RationalFunction> df(nvars()), dg(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
      df[i] = f.derivative(i);
      dg[i] = g.derivative(i);
    }
    RationalFunction acc = RationalFunction::zero(amb);
    for (std::size_t a = 0; a < nvars(); ++a) {
      if (df[a].is_zero()) continue;
      for (std::size_t b = 0; b < nvars(); ++b) {
        if (dg[b].is_zero() || entries_[a][b].is_zero()) continue;
        acc = acc + df[a] * dg[b] * entries_[a][b];
      }
    }
    return acc;
  }

  /// The derivation {f, -} (left slot) or {-, f} (right slot).
  DerivationSpec hamiltonian(const RationalFunction& f, Slot slot) const {
    require_usable();
    alg_->require_legal(f);
    DerivationSpec d;
    d.algebra = alg_;
    d.values.reserve(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
      RationalFunction zi(Polynomial::variable(ambient(), i));
      d.values.push_back(slot == Slot::Left ? bracket(f, zi) : bracket(zi, f));
    }
    return d;
  }

  /// The 2n generator hamiltonians (rows and columns of the table), the
  /// derivations driving every stability computation.
  std::vector<std::vector<RationalFunction>> generator_hamiltonians() const {
    std::vector<std::vector<RationalFunction>> ders;
    for (std::size_t z = 0; z < nvars(); ++z) {
      ders.push_back(entries_[z]);  // {z, -}: values {z, z_b}
      std::vector<RationalFunction> col;
      for (std::size_t a = 0; a < nvars(); ++a) col.push_back(entries_[a][z]);
      ders.push_back(std::move(col));  // {-, z}: values {z_a, z}
    }
    return ders;
  }

  bool usable() const { return report_.passed; }

 private:
  void require_usable() const {
    if (!report_.passed)
      throw error("bracket table failed its quotient compatibility check");
  }

  void run_well_defined_check() {
    const auto& rel = alg_->relations();
    if (rel.empty()) return;  // polynomial case: vacuously fine
    for (std::size_t r = 0; r < rel.size(); ++r) {
      RationalFunction p(rel[r]);
      for (std::size_t z = 0; z < nvars(); ++z) {
        RationalFunction zi(Polynomial::variable(ambient(), z));
        RationalFunction pz = bracket_raw(p, zi);
        RationalFunction zp = bracket_raw(zi, p);
        IdealHandle zero = IdealHandle::zero(ambient());
        if (!alg_->member_localized(pz, zero))
          report_.failures.push_back(
              {"relation-stability",
               "{" + rel[r].str() + "," + var(z) + "} = " + pz.str()});
        if (!alg_->member_localized(zp, zero))
          report_.failures.push_back(
              {"relation-stability",
               "{" + var(z) + "," + rel[r].str() + "} = " + zp.str()});
      }
    }
  }

  AlgebraPtr alg_;
  std::vector<std::vector<RationalFunction>> entries_;
  WellDefinedReport report_;
};

inline WellDefinedReport check_well_defined(const BracketTable& t) {
  return t.well_defined();
}

/// Is I a bidifferential ideal: {R, I} and {I, R} land in the localized
/// extension of I. Testing variables against generators suffices: for
/// f = sum h_i g_i the Leibniz rule gives {r, f} = sum h_i {r, g_i} +
/// sum g_i {r, h_i}, and an arbitrary first argument expands through the
/// chain rule into variable hamiltonians with ring coefficients.
inline bool is_bidifferential_ideal(const BracketTable& B, const IdealHandle& I,
                                    std::string* witness = nullptr) {
  require_same_ambient(I.ambient(), B.ambient());
  IdealHandle target = B.algebra()->effective_ideal(I);
  for (const auto& g : I.generators()) {
    RationalFunction rg(g);
    for (std::size_t z = 0; z < B.nvars(); ++z) {
      RationalFunction zi(Polynomial::variable(B.ambient(), z));
      RationalFunction gz = B.bracket(rg, zi);
      if (!B.algebra()->member_in_effective(gz, target)) {
        if (witness) *witness = gz.str();
        return false;
      }
      RationalFunction zg = B.bracket(zi, rg);
      if (!B.algebra()->member_in_effective(zg, target)) {
        if (witness) *witness = zg.str();
        return false;
      }
    }
  }
  return true;
}

/// Poisson test: skew symmetry and the Jacobi identity on generators, plus
/// bilinearity over the declared scalar field. Generator checks suffice:
/// once the table is skew, the Jacobiator is a derivation in each of its
/// three arguments, so it vanishes everywhere iff it vanishes on variable
/// triples; and scalar-linearity of the hamiltonians amounts to the scalar
/// generators having zero hamiltonians, by the chain rule.
inline bool is_poisson(const BracketTable& B, std::string* witness = nullptr) {
  const auto& alg = *B.algebra();
  const std::size_t n = B.nvars();
  auto fail = [&](const std::string& w) {
    if (witness) *witness = w;
    return false;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      if (!alg.is_zero_mod(B.entry(a, b) + B.entry(b, a)))
        return fail("{" + B.var(a) + "," + B.var(b) + "} + {" + B.var(b) +
                    "," + B.var(a) + "} = " +
                    (B.entry(a, b) + B.entry(b, a)).str());
    }
  for (std::size_t s = 0; s < n; ++s) {
    if (!alg.is_scalar(s)) continue;
    for (std::size_t z = 0; z < n; ++z) {
      if (!alg.is_zero_mod(B.entry(s, z)))
        return fail("{" + B.var(s) + "," + B.var(z) + "} = " +
                    B.entry(s, z).str());
      if (!alg.is_zero_mod(B.entry(z, s)))
        return fail("{" + B.var(z) + "," + B.var(s) + "} = " +
                    B.entry(z, s).str());
    }
  }
  for (std::size_t a = 0; a + 2 < n; ++a)
    for (std::size_t b = a + 1; b + 1 < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        RationalFunction za(Polynomial::variable(B.ambient(), a));
        RationalFunction zb(Polynomial::variable(B.ambient(), b));
        RationalFunction zc(Polynomial::variable(B.ambient(), c));
        RationalFunction jac = B.bracket(za, B.bracket(zb, zc)) +
                               B.bracket(zb, B.bracket(zc, za)) +
                               B.bracket(zc, B.bracket(za, zb));
        if (!alg.is_zero_mod(jac))
          return fail("jacobiator(" + B.var(a) + "," + B.var(b) + "," +
                      B.var(c) + ") = " + jac.str());
      }
  return true;
}

/// Entry-wise table equality modulo the relations (the operational form of
/// extension uniqueness through differentially trivial steps: two tables
/// agreeing on generators with the same relations agree everywhere).
inline bool tables_equal(const BracketTable& A, const BracketTable& B) {
  if (!A.ambient()->same(*B.ambient())) return false;
  for (std::size_t a = 0; a < A.nvars(); ++a)
    for (std::size_t b = 0; b < A.nvars(); ++b)
      if (!A.algebra()->equal_mod(A.entry(a, b), B.entry(a, b))) return false;
  return true;
}

}  // namespace biderive
