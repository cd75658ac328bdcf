#pragma once

#include <map>
#include <string>
#include <vector>

#include "biderive/constants.hpp"

namespace biderive {

struct DarbouxSearchResult {
  /// Verified generators of principal bidifferential ideals, monic with
  /// pairwise distinct leading monomials (the enumeration canonicalization).
  std::vector<Polynomial> polys;
  /// A positive-dimensional family of solutions was detected (e.g. every
  /// polynomial qualifies under the trivial bracket); `polys` then carries
  /// only the zeroed-parameter representatives.
  bool family = false;
  /// Some candidate system was zero-dimensional but not linearly solvable
  /// over Q; such (necessarily irrational) solutions are not enumerated.
  bool nonrational = false;
};

namespace detail {

/// Polynomial in the ambient variables whose coefficients are polynomials
/// in a separate ring of unknowns; just enough structure for division by a
/// list of divisors whose leading coefficients are scalars.
struct ParamPoly {
  // ambient exponent vector -> coefficient polynomial over the unknowns
  std::map<std::vector<std::uint32_t>, Polynomial> terms;

  void add(const Monomial& m, const Polynomial& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(m.exp, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
};

inline std::optional<Monomial> param_leading(const ParamPoly& p,
                                             MonomialOrder ord) {
  std::optional<Monomial> best;
  for (const auto& [exp, c] : p.terms) {
    Monomial m(exp);
    if (!best || monomial_cmp(m, *best, ord) > 0) best = m;
  }
  return best;
}

/// Remainder of p under division by (parametric f with unit leading
/// coefficient at mu) and the scalar-leading-coefficient divisors `fixed`.
inline ParamPoly param_remainder(ParamPoly p, const Monomial& mu,
                                 const std::map<std::vector<std::uint32_t>, Polynomial>& f_terms,
                                 const std::vector<Polynomial>& fixed,
                                 const AmbientPtr& amb, const AmbientPtr& unknowns) {
  const MonomialOrder ord = amb->order();
  ParamPoly rem;
  while (!p.terms.empty()) {
    Monomial lead = *param_leading(p, ord);
    Polynomial lead_coeff = p.terms.at(lead.exp);
    bool reduced = false;
    if (divides(mu, lead)) {
      // subtract lead_coeff * (lead/mu) * f
      Monomial shift = quotient(lead, mu);
      for (const auto& [fexp, fc] : f_terms) {
        Monomial m = Monomial(fexp) * shift;
        Polynomial delta = -(lead_coeff * fc);
        p.add(m, delta);
      }
      reduced = true;
    } else {
      for (const auto& g : fixed) {
        if (g.is_zero()) continue;
        if (!divides(g.leading_monomial(), lead)) continue;
        Monomial shift = quotient(lead, g.leading_monomial());
        Scalar inv = 1 / g.leading_coeff();
        for (const auto& t : g.terms()) {
          Monomial m = t.mon * shift;
          p.add(m, Polynomial::constant(unknowns, -t.coeff * inv) * lead_coeff);
        }
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.add(lead, lead_coeff);
      p.terms.erase(lead.exp);
    }
  }
  return rem;
}

}  // namespace detail

/// Bounded search for principal bidifferential ideals: all monic f of total
/// degree <= d (one candidate per leading monomial, no terms above it) such
/// that f divides {f, z} and {z, f} modulo the relations, for every
/// variable z. For each leading monomial the divisibility conditions become,
/// after parametric division by f and the relation basis, a polynomial
/// system in the undetermined coefficients, solved with the Groebner engine;
/// linearly determined solutions are extracted and every candidate is
/// reverified exactly before being reported.
inline DarbouxSearchResult darboux_principal_search(const BracketTable& B,
                                                    std::uint32_t d) {
  DarbouxSearchResult result;
  const AmbientPtr& amb = B.ambient();
  const AlgebraPresentation& alg = *B.algebra();
  const std::size_t n = B.nvars();
  const MonomialOrder ord = amb->order();

  std::vector<Monomial> all = monomials_up_to(n, d);
  std::sort(all.begin(), all.end(), [ord](const Monomial& a, const Monomial& b) {
    return monomial_cmp(a, b, ord) < 0;
  });

  for (const auto& mu : all) {
    if (mu.degree() == 0) continue;  // scalars generate the whole ring
    // Unknowns: one coefficient per monomial strictly below mu.
    std::vector<Monomial> below;
    for (const auto& a : all)
      if (monomial_cmp(a, mu, ord) < 0) below.push_back(a);
    std::vector<std::string> cnames;
    for (std::size_t i = 0; i < below.size(); ++i)
      cnames.push_back("c" + std::to_string(i));
    AmbientPtr U = Ambient::make(cnames);

    // f = mu + sum c_i * below_i as a parametric polynomial.
    std::map<std::vector<std::uint32_t>, Polynomial> f_terms;
    f_terms[mu.exp] = Polynomial::one(U);
    for (std::size_t i = 0; i < below.size(); ++i)
      f_terms[below[i].exp] = Polynomial::variable(U, i);

    // Parametric derivative of f in variable a.
    auto df = [&](std::size_t a) {
      detail::ParamPoly out;
      for (const auto& [exp, c] : f_terms) {
        if (!exp[a]) continue;
        Monomial m((exp));
        Scalar e(static_cast<long>(m.exp[a]));
        m.exp[a] -= 1;
        out.add(m, c.scaled(e));
      }
      return out;
    };

    // Assemble the coefficient equations from every divisibility condition.
    std::vector<Polynomial> equations;
    bool abandoned = false;
    for (std::size_t z = 0; z < n && !abandoned; ++z) {
      for (Slot slot : {Slot::Left, Slot::Right}) {
        // cleared bracket: sum_a df_a * entry * (product of other dens)
        std::vector<RationalFunction> ent(n);
        for (std::size_t a = 0; a < n; ++a)
          ent[a] = slot == Slot::Left ? B.entry(a, z) : B.entry(z, a);
        Polynomial common = Polynomial::one(amb);
        for (const auto& e : ent)
          if (!e.den().is_constant()) common = common * e.den();
        detail::ParamPoly h;
        for (std::size_t a = 0; a < n; ++a) {
          if (ent[a].is_zero()) continue;
          Polynomial val = ent[a].num();
          if (!ent[a].den().is_constant()) {
            auto [q, r] = divide_single(common, ent[a].den());
            val = val * q;
          } else {
            val = val * common;
          }
          detail::ParamPoly da = df(a);
          for (const auto& [exp, c] : da.terms)
            for (const auto& t : val.terms())
              h.add(Monomial(exp) * t.mon, c.scaled(t.coeff));
        }
        detail::ParamPoly rem = detail::param_remainder(
            std::move(h), mu, f_terms, alg.saturated_relations().basis(), amb, U);
        for (const auto& [exp, c] : rem.terms) equations.push_back(c);
      }
    }

    IdealHandle sys = IdealHandle::from_generators(equations, U);
    if (sys.is_unit_ideal()) continue;  // no Darboux polynomial with this lead

    // Linearly determined part: if the reduced basis is affine-linear, its
    // solution set is an affine subspace; take the zeroed-free-parameters
    // point as the candidate.
    bool linear = true;
    for (const auto& g : sys.basis())
      if (g.total_degree() > 1) linear = false;

    std::vector<Scalar> cvals(below.size(), Scalar(0));
    if (linear) {
      QMatrix A(sys.basis().size(), below.size());
      std::vector<Scalar> rhs(sys.basis().size(), Scalar(0));
      for (std::size_t r = 0; r < sys.basis().size(); ++r) {
        for (const auto& t : sys.basis()[r].terms()) {
          if (t.mon.is_one()) {
            rhs[r] = -t.coeff;
          } else {
            for (std::size_t i = 0; i < below.size(); ++i)
              if (t.mon.exp[i]) A.at(r, i) = t.coeff;
          }
        }
      }
      // Solve A c = rhs; free coordinates stay zero.
      QMatrix aug(A.rows, A.cols + 1);
      for (std::size_t r = 0; r < A.rows; ++r) {
        for (std::size_t c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, A.cols) = rhs[r];
      }
      auto pivots = rref(aug);
      bool consistent = true;
      std::size_t bound_vars = 0;
      for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
        if (pivots[pr] == A.cols) {
          consistent = false;
          break;
        }
        ++bound_vars;
      }
      if (!consistent) continue;
      // A nonpivot unknown means an affine family of solutions.
      if (bound_vars < below.size()) result.family = true;
      for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
        // zero the free coordinates: pivot value = rhs minus free part = rhs
        cvals[pivots[pr]] = aug.at(pr, A.cols);
      }
    } else {
      result.nonrational = true;
      continue;
    }

    Polynomial cand = Polynomial::monomial_term(amb, mu, Scalar(1));
    for (std::size_t i = 0; i < below.size(); ++i)
      if (cvals[i] != 0)
        cand = cand + Polynomial::monomial_term(amb, below[i], cvals[i]);

    if (is_bidifferential_ideal(B, IdealHandle::from_generators({cand}, amb)))
      result.polys.push_back(std::move(cand));
  }
  return result;
}

}  // namespace biderive
