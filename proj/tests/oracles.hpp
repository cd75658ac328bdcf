// Independent test oracles: brute-force routines kept deliberately separate
// from the Groebner machinery they cross-check.
#pragma once

#include <random>
#include <vector>

#include "biderive/linalg.hpp"
#include "biderive/polynomial.hpp"
#include "biderive/substitute.hpp"

namespace biderive::testing {

inline void enumerate_monomials_rec(std::size_t nvars, std::size_t i,
                                    std::uint32_t budget, Monomial& cur,
                                    std::vector<Monomial>& out) {
  if (i == nvars) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t e = 0; e <= budget; ++e) {
    cur.exp[i] = e;
    enumerate_monomials_rec(nvars, i + 1, budget - e, cur, out);
  }
  cur.exp[i] = 0;
}

/// All monomials of total degree <= d, in a fixed deterministic order.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars,
                                             std::uint32_t d) {
  std::vector<Monomial> out;
  Monomial cur(nvars);
  enumerate_monomials_rec(nvars, 0, d, cur, out);
  return out;
}

/// Degree-bounded linear-algebra membership oracle: is f a combination
/// sum h_i g_i with deg(h_i g_i) <= bound? Decided by exact linear algebra
/// on undetermined coefficients, no division or S-polynomials involved.
inline bool membership_oracle(const Polynomial& f,
                              const std::vector<Polynomial>& gens,
                              std::uint32_t bound) {
  const AmbientPtr& amb = f.ambient();
  if (f.is_zero()) return true;
  std::vector<Monomial> rowspace = monomials_up_to(amb->size(), bound);
  std::map<std::vector<std::uint32_t>, std::size_t> rowindex;
  for (std::size_t i = 0; i < rowspace.size(); ++i)
    rowindex[rowspace[i].exp] = i;

  struct Col {
    std::size_t gen;
    Monomial mult;
  };
  std::vector<Col> cols;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    if (gens[gi].is_zero()) continue;
    std::uint64_t dg = gens[gi].total_degree();
    if (dg > bound) continue;
    for (const auto& m : monomials_up_to(amb->size(),
                                         static_cast<std::uint32_t>(bound - dg)))
      cols.push_back({gi, m});
  }
  if (cols.empty()) return false;

  QMatrix A(rowspace.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Polynomial& g = gens[cols[c].gen];
    for (const auto& t : g.terms()) {
      Monomial prod = t.mon * cols[c].mult;
      auto it = rowindex.find(prod.exp);
      if (it == rowindex.end()) return false;  // exceeds bound; cannot happen
      A.at(it->second, c) = t.coeff;
    }
  }
  std::vector<Scalar> b(rowspace.size(), Scalar(0));
  for (const auto& t : f.terms()) {
    auto it = rowindex.find(t.mon.exp);
    if (it == rowindex.end()) return false;  // f exceeds the bound
    b[it->second] = t.coeff;
  }
  return solvable(A, b);
}

/// Jet oracle: do all partial derivatives of f up to total order k vanish
/// at the point? Uses only derivative + evaluation.
inline bool jets_vanish(const Polynomial& f, const std::vector<Scalar>& point,
                        std::uint32_t k) {
  std::vector<Monomial> orders = monomials_up_to(f.ambient()->size(), k);
  for (const auto& o : orders) {
    Polynomial d = f;
    for (std::size_t v = 0; v < o.exp.size(); ++v)
      for (std::uint32_t e = 0; e < o.exp[v]; ++e) d = d.derivative(v);
    if (evaluate_at(d, point) != 0) return false;
  }
  return true;
}

}  // namespace biderive::testing
