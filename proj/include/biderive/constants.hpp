#pragma once

#include <vector>

#include "biderive/bracket.hpp"
#include "biderive/linalg.hpp"

namespace biderive {

namespace detail {

inline void monomials_rec(std::size_t nvars, std::size_t i, std::uint32_t budget,
                          Monomial& cur, std::vector<Monomial>& out) {
  if (i == nvars) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t e = 0; e <= budget; ++e) {
    cur.exp[i] = e;
    monomials_rec(nvars, i + 1, budget - e, cur, out);
  }
  cur.exp[i] = 0;
}

}  // namespace detail

/// All monomials of total degree <= d, deterministic order.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint32_t d) {
  std::vector<Monomial> out;
  Monomial cur(nvars);
  detail::monomials_rec(nvars, 0, d, cur, out);
  return out;
}

/// A Q-vector-space basis of the polynomial constants up to total degree d:
/// elements whose hamiltonians in both slots vanish modulo the relations.
/// Solved by exact linear algebra on undetermined coefficients; the basis
/// always contains 1.
inline std::vector<Polynomial> polynomial_constants_up_to(const BracketTable& B,
                                                          std::uint32_t d) {
  const AmbientPtr& amb = B.ambient();
  const AlgebraPresentation& alg = *B.algebra();
  const std::size_t n = B.nvars();
  std::vector<Monomial> mons = monomials_up_to(n, d);

  // For each candidate basis monomial mu and each (variable, slot)
  // condition, the reduced condition value; conditions are linear in the
  // undetermined coefficients, so reduce the images of basis monomials.
  struct Condition {
    std::vector<Polynomial> images;  // indexed like mons
  };
  std::vector<Condition> conditions;
  for (std::size_t z = 0; z < n; ++z) {
    for (Slot slot : {Slot::Left, Slot::Right}) {
      Condition cond;
      cond.images.reserve(mons.size());
      RationalFunction zi(Polynomial::variable(amb, z));
      std::vector<RationalFunction> raw;
      raw.reserve(mons.size());
      for (const auto& mu : mons) {
        RationalFunction f(Polynomial::monomial_term(amb, mu, Scalar(1)));
        raw.push_back(slot == Slot::Left ? B.bracket_raw(f, zi)
                                         : B.bracket_raw(zi, f));
      }
      // Clear unit denominators across the whole condition row.
      Polynomial common = Polynomial::one(amb);
      for (const auto& r : raw)
        if (!r.den().is_constant()) common = common * r.den();
      for (const auto& r : raw) {
        Polynomial cleared = r.num();
        if (!r.den().is_constant()) {
          auto [q, rem] = divide_single(common, r.den());
          cleared = cleared * q;  // exact by construction
        } else {
          cleared = cleared * common;
        }
        cond.images.push_back(alg.reduce(cleared));
      }
      conditions.push_back(std::move(cond));
    }
  }

  // Assemble the linear system: rows indexed by (condition, monomial of the
  // reduced image), columns by candidate basis monomials.
  std::map<std::vector<std::uint32_t>, std::size_t> rowkey;
  std::size_t nrows = 0;
  for (const auto& cond : conditions)
    for (const auto& img : cond.images)
      for (const auto& t : img.terms())
        if (rowkey.emplace(t.mon.exp, nrows).second) ++nrows;

  // Rows: per condition, a block of nrows monomial slots.
  QMatrix A(nrows * conditions.size(), mons.size());
  for (std::size_t ci = 0; ci < conditions.size(); ++ci)
    for (std::size_t mi = 0; mi < mons.size(); ++mi)
      for (const auto& t : conditions[ci].images[mi].terms())
        A.at(ci * nrows + rowkey[t.mon.exp], mi) = t.coeff;

  std::vector<std::vector<Scalar>> null = nullspace(std::move(A));
  std::vector<Polynomial> basis;
  basis.reserve(null.size());
  for (const auto& v : null) {
    Polynomial f = Polynomial::zero(amb);
    for (std::size_t mi = 0; mi < mons.size(); ++mi)
      if (v[mi] != 0)
        f = f + Polynomial::monomial_term(amb, mons[mi], v[mi]);
    basis.push_back(std::move(f));
  }
  return basis;
}

/// Fixed-denominator rational constants probe: for each candidate
/// denominator v (a unit), searches numerators u of degree <= d with u/v
/// constant. The conditions v*{u,z} - u*{v,z} = 0 (both slots) are linear
/// in u once v is fixed. Returns the nonconstant u/v found, if any.
inline std::vector<RationalFunction> rational_constants_probe(
    const BracketTable& B, std::uint32_t d,
    const std::vector<Polynomial>& denominators) {
  const AmbientPtr& amb = B.ambient();
  const AlgebraPresentation& alg = *B.algebra();
  std::vector<RationalFunction> found;
  for (const auto& v : denominators) {
    if (!alg.is_unit(v)) continue;
    if (v.is_constant()) continue;
    RationalFunction rv(v);
    const std::size_t n = B.nvars();
    std::vector<Monomial> mons = monomials_up_to(n, d);
    std::vector<std::vector<Polynomial>> imgs;  // per condition
    for (std::size_t z = 0; z < n; ++z) {
      for (Slot slot : {Slot::Left, Slot::Right}) {
        RationalFunction zi(Polynomial::variable(amb, z));
        RationalFunction vz = slot == Slot::Left ? B.bracket_raw(rv, zi)
                                                 : B.bracket_raw(zi, rv);
        std::vector<Polynomial> row;
        Polynomial common = Polynomial::one(amb);
        std::vector<RationalFunction> raw;
        for (const auto& mu : mons) {
          RationalFunction u(Polynomial::monomial_term(amb, mu, Scalar(1)));
          RationalFunction uz = slot == Slot::Left ? B.bracket_raw(u, zi)
                                                   : B.bracket_raw(zi, u);
          raw.push_back(rv * uz - u * vz);
        }
        for (const auto& r : raw)
          if (!r.den().is_constant()) common = common * r.den();
        for (const auto& r : raw) {
          Polynomial cleared = r.num();
          if (!r.den().is_constant()) {
            auto [q, rem] = divide_single(common, r.den());
            cleared = cleared * q;
          } else {
            cleared = cleared * common;
          }
          row.push_back(alg.reduce(cleared));
        }
        imgs.push_back(std::move(row));
      }
    }
    std::map<std::vector<std::uint32_t>, std::size_t> rowkey;
    std::size_t nrows = 0;
    for (const auto& row : imgs)
      for (const auto& img : row)
        for (const auto& t : img.terms())
          if (rowkey.emplace(t.mon.exp, nrows).second) ++nrows;
    QMatrix A(nrows * imgs.size(), mons.size());
    for (std::size_t ci = 0; ci < imgs.size(); ++ci)
      for (std::size_t mi = 0; mi < mons.size(); ++mi)
        for (const auto& t : imgs[ci][mi].terms())
          A.at(ci * nrows + rowkey[t.mon.exp], mi) = t.coeff;
    for (const auto& sol : nullspace(std::move(A))) {
      Polynomial u = Polynomial::zero(amb);
      for (std::size_t mi = 0; mi < mons.size(); ++mi)
        if (sol[mi] != 0) u = u + Polynomial::monomial_term(amb, mons[mi], sol[mi]);
      if (u.is_zero()) continue;
      RationalFunction cand = RationalFunction::make(u, v);
      if (cand.is_polynomial()) continue;  // already covered by the poly search
      found.push_back(std::move(cand));
    }
  }
  return found;
}

}  // namespace biderive
