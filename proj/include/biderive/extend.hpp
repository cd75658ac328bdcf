#pragma once

#include <string>
#include <vector>

#include "biderive/bracket.hpp"
#include "biderive/substitute.hpp"

namespace biderive {

struct ExtensionResult {
  BracketTable table;
  /// The element made invertible by an algebraic adjunction (dP/dt at the
  /// new element); 1 for constructions that do not localize.
  Polynomial forced_unit;
  std::vector<std::string> notes;
};

/// Append one variable to an algebra, keeping relations/inverted/scalars.
inline AlgebraPtr append_variable(const AlgebraPtr& alg,
                                  const std::string& name, bool scalar,
                                  std::vector<Polynomial> extra_relations = {},
                                  std::vector<Polynomial> extra_inverted = {}) {
  const AmbientPtr& old = alg->ambient();
  if (old->index(name)) throw error("variable name already used: " + name);
  std::vector<std::string> vars = old->vars();
  vars.push_back(name);
  AmbientPtr next = Ambient::make(std::move(vars), old->order());
  std::vector<std::string> scalars = alg->scalar_vars();
  if (scalar) scalars.push_back(name);
  std::vector<Polynomial> rel, inv;
  for (const auto& r : alg->relations()) rel.push_back(transport(r, next));
  for (auto& r : extra_relations) rel.push_back(std::move(r));
  for (const auto& f : alg->inverted()) inv.push_back(transport(f, next));
  for (auto& f : extra_inverted) inv.push_back(std::move(f));
  AlgebraOptions opts;
  opts.asserted_domain = alg->asserted_domain();
  opts.check_scalar_free = false;      // validated by the callers' own rules
  opts.skip_inverted_validation = true;  // callers check separability exactly
  return AlgebraPresentation::make(next, scalars, std::move(rel),
                                   std::move(inv), opts);
}

/// Same table over the algebra with f inverted. The extension through a
/// localisation is unique (the localisation admits no nonzero derivations
/// linear over the base, by the quotient rule) and lifting; brackets with
/// 1/f fall out of the chain rule at evaluation time.
inline ExtensionResult extend_localisation(const BracketTable& B,
                                           const Polynomial& f) {
  require_same_ambient(f.ambient(), B.ambient());
  const AlgebraPtr& alg = B.algebra();
  if (alg->saturated_relations().contains(f))
    throw error("cannot invert an element that is zero in the localisation: " +
                f.str());
  ExtensionResult out{
      BracketTable::make(
          AlgebraPresentation::make(
              alg->ambient(), alg->scalar_vars(), alg->relations(),
              [&] {
                std::vector<Polynomial> inv = alg->inverted();
                if (!f.is_constant()) inv.push_back(f);
                return inv;
              }(),
              [&] {
                AlgebraOptions o;
                o.asserted_domain = alg->asserted_domain();
                o.check_scalar_free = false;
                o.skip_inverted_validation = true;
                return o;
              }()),
          B.entries()),
      Polynomial::one(B.ambient()),
      {"unique extension (no base-linear derivations on a localisation)",
       "lifting extension"}};
  return out;
}

/// Adjoin a transcendental element t with prescribed hamiltonians:
/// entries (z, t) = D(z) for old variables, entries (t, -) = E.
inline ExtensionResult extend_transcendental(const BracketTable& B,
                                             const DerivationSpec& D,
                                             const DerivationSpec& E,
                                             const std::string& newvar,
                                             bool newvar_scalar = false) {
  const AlgebraPtr& alg = B.algebra();
  if (D.algebra->ambient().get() != alg->ambient().get() &&
      !D.algebra->ambient()->same(*alg->ambient()))
    throw error("D must be a derivation on the base algebra");
  for (auto bad : D.validate()) throw error("bad D: " + bad);

  AlgebraPtr next = append_variable(alg, newvar, newvar_scalar);
  const AmbientPtr& namb = next->ambient();
  const std::size_t n = alg->nvars();

  if (E.algebra->nvars() != n + 1 ||
      !E.algebra->ambient()->same(*namb))
    throw error("E must be a derivation on the enlarged algebra");
  for (auto bad : E.validate()) throw error("bad E: " + bad);

  std::vector<std::vector<RationalFunction>> entries(
      n + 1, std::vector<RationalFunction>(n + 1, RationalFunction::zero(namb)));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      entries[a][b] = transport(B.entry(a, b), namb);
    entries[a][n] = transport(D.values[a], namb);
  }
  for (std::size_t b = 0; b <= n; ++b) entries[n][b] = E.values[b];

  return {BracketTable::make(next, std::move(entries)),
          Polynomial::one(namb),
          {"unique extension with the prescribed hamiltonians of " + newvar}};
}

/// Coefficients of P by degree in the variable `tvar` (over the same ambient
/// with that exponent stripped).
inline std::vector<Polynomial> coefficients_in(const Polynomial& P,
                                               std::size_t tvar) {
  std::vector<Polynomial> out(P.degree_in(tvar) + 1,
                              Polynomial::zero(P.ambient()));
  for (const auto& t : P.terms()) {
    Monomial m = t.mon;
    std::uint32_t j = m.exp[tvar];
    m.exp[tvar] = 0;
    out[j] = out[j] + Polynomial::monomial_term(P.ambient(), std::move(m), t.coeff);
  }
  return out;
}

namespace detail {

/// P with the derivation applied to its coefficients, evaluated at b.
inline RationalFunction coefficient_derivative_at(
    const std::vector<RationalFunction>& coeffs_at_target,  // transported
    const DerivationSpec& der, const RationalFunction& b) {
  const AmbientPtr& amb = der.algebra->ambient();
  RationalFunction acc = RationalFunction::zero(amb);
  RationalFunction bpow = RationalFunction::one(amb);
  for (std::size_t j = 0; j < coeffs_at_target.size(); ++j) {
    RationalFunction dc = der.apply(coeffs_at_target[j]);
    if (!dc.is_zero()) acc = acc + dc * bpow;
    bpow = bpow * b;
  }
  return acc;
}

}  // namespace detail

/// Adjoin a separably algebraic element: newvar b with relation P(b) = 0 and
/// f = dP/dt(b) inverted. Every new entry is forced by implicit
/// differentiation: applying a hamiltonian d to 0 = P(b) gives
/// f d(b) + P^d(b) = 0, hence d(b) = -P^d(b)/f, where P^d applies d to the
/// coefficients of P. The extension is unique (f-localized adjunction leaves
/// no room for base-linear derivations) and lifting.
inline ExtensionResult extend_algebraic(const BracketTable& B,
                                        const std::string& newvar,
                                        const Polynomial& minpoly,
                                        const std::string& tvar,
                                        bool newvar_scalar = false) {
  const AlgebraPtr& alg = B.algebra();
  const AmbientPtr& pamb = minpoly.ambient();
  std::size_t t_idx = pamb->index_or_throw(tvar);
  if (minpoly.degree_in(t_idx) == 0)
    throw error("minimal polynomial must involve " + tvar);

  // Leading-coefficient reduction: localize at a nonconstant leading
  // coefficient so the adjunction behaves like a monic one.
  std::vector<Polynomial> pcoeffs = coefficients_in(minpoly, t_idx);
  Polynomial lead_in_old = transport(pcoeffs.back(), B.ambient());
  if (alg->saturated_relations().contains(lead_in_old))
    throw error("leading coefficient of the minimal polynomial vanishes");

  std::vector<std::string> notes;
  BracketTable base = B;
  if (!lead_in_old.is_constant()) {
    base = extend_localisation(B, lead_in_old).table;
    notes.push_back("localized at the leading coefficient " +
                    lead_in_old.str());
  }

  // Enlarged presentation: relation P(b), inverted f = dP/dt(b).
  AlgebraPtr alg0 = base.algebra();
  const std::size_t n = alg0->nvars();

  // Build the new ambient first so P(b) and f can be transported into it.
  std::vector<std::string> vars = alg0->ambient()->vars();
  vars.push_back(newvar);
  AmbientPtr namb = Ambient::make(std::move(vars), alg0->ambient()->order());
  Polynomial Pb = transport(minpoly, namb, {{tvar, newvar}});
  std::size_t b_idx = namb->index_or_throw(newvar);
  Polynomial f = Pb.derivative(b_idx);

  // Separability: f must not vanish on the enlarged localisation.
  {
    std::vector<Polynomial> rel;
    for (const auto& r : alg0->relations()) rel.push_back(transport(r, namb));
    rel.push_back(Pb);
    std::vector<Polynomial> inv;
    for (const auto& g : alg0->inverted()) inv.push_back(transport(g, namb));
    IdealHandle sat = saturate_by_all(
        IdealHandle::from_generators(std::move(rel), namb), inv);
    if (sat.contains(f))
      throw error("inseparable adjunction: dP/dt(" + newvar +
                  ") vanishes modulo the relations");
  }

  AlgebraPtr next = append_variable(alg0, newvar, newvar_scalar, {Pb}, {f});
  RationalFunction b(Polynomial::variable(namb, b_idx));
  RationalFunction rf_f(f);

  // Transported coefficient list of P, used for every P^d evaluation.
  std::vector<RationalFunction> coeffs;
  for (const auto& c : pcoeffs)
    coeffs.push_back(RationalFunction(transport(c, namb, {{tvar, newvar}})));

  auto forced_value = [&](const DerivationSpec& d) {
    RationalFunction pd = detail::coefficient_derivative_at(coeffs, d, b);
    return -(pd / rf_f);
  };

  std::vector<std::vector<RationalFunction>> entries(
      n + 1, std::vector<RationalFunction>(n + 1, RationalFunction::zero(namb)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t bb = 0; bb < n; ++bb)
      entries[a][bb] = transport(base.entry(a, bb), namb);

  // {z, b}: apply the left hamiltonian of z to the coefficients.
  for (std::size_t z = 0; z < n; ++z) {
    DerivationSpec left;  // {z, -} on the enlarged ambient (values on b unused)
    left.algebra = next;
    for (std::size_t k = 0; k < n; ++k)
      left.values.push_back(transport(base.entry(z, k), namb));
    left.values.push_back(RationalFunction::zero(namb));
    entries[z][n] = forced_value(left);
  }
  // {b, z}: apply the right hamiltonian of z to the coefficients.
  for (std::size_t z = 0; z < n; ++z) {
    DerivationSpec right;
    right.algebra = next;
    for (std::size_t k = 0; k < n; ++k)
      right.values.push_back(transport(base.entry(k, z), namb));
    right.values.push_back(RationalFunction::zero(namb));
    entries[n][z] = forced_value(right);
  }
  // {b, b}: second stage, using the freshly forced row {b, -}.
  {
    DerivationSpec bleft;
    bleft.algebra = next;
    for (std::size_t k = 0; k < n; ++k) bleft.values.push_back(entries[n][k]);
    bleft.values.push_back(RationalFunction::zero(namb));
    entries[n][n] = forced_value(bleft);
  }

  notes.push_back("unique lifting extension; entries forced by implicit "
                  "differentiation against " + Pb.str());
  return {BracketTable::make(next, std::move(entries)), f, std::move(notes)};
}

/// The unique derivation on a two-factor presentation restricting to d1 on
/// the left factor and d2 on the right factor; they must agree on the
/// shared scalars.
inline DerivationSpec tensor_derivation(
    const DerivationSpec& d1, const DerivationSpec& d2,
    const AlgebraPtr& merged,
    const std::map<std::string, std::string>& left_rename,
    const std::map<std::string, std::string>& right_rename) {
  DerivationSpec out;
  out.algebra = merged;
  const AmbientPtr& mamb = merged->ambient();
  out.values.assign(merged->nvars(), RationalFunction::zero(mamb));

  const AmbientPtr& lamb = d1.algebra->ambient();
  for (std::size_t i = 0; i < lamb->size(); ++i) {
    std::string name = lamb->var(i);
    auto it = left_rename.find(name);
    std::string target = it == left_rename.end() ? name : it->second;
    out.values[mamb->index_or_throw(target)] =
        transport(d1.values[i], mamb, left_rename);
  }
  const AmbientPtr& ramb = d2.algebra->ambient();
  for (std::size_t i = 0; i < ramb->size(); ++i) {
    std::string name = ramb->var(i);
    auto it = right_rename.find(name);
    std::string target = it == right_rename.end() ? name : it->second;
    std::size_t idx = mamb->index_or_throw(target);
    RationalFunction v = transport(d2.values[i], mamb, right_rename);
    if (merged->is_scalar(idx)) {
      if (!merged->equal_mod(out.values[idx], v))
        throw error("factor derivations disagree on the shared scalar " +
                    target);
      continue;
    }
    out.values[idx] = std::move(v);
  }
  return out;
}

}  // namespace biderive
