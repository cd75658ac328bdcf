#pragma once

#include <vector>

#include "biderive/ideal.hpp"

namespace biderive {

/// Element of a free module R^r, coordinates over a shared ambient.
struct ModuleElement {
  std::vector<Polynomial> coords;

  std::size_t rank() const { return coords.size(); }

  bool is_zero() const {
    for (const auto& c : coords)
      if (!c.is_zero()) return false;
    return true;
  }
};

namespace detail {

// Position-over-term: earlier positions dominate, ties compared by the
// ambient order on monomials.
struct ModuleLead {
  std::size_t pos;
  Monomial mon;
  Scalar coeff;
};

inline ModuleLead module_lead(const ModuleElement& v) {
  for (std::size_t p = 0; p < v.coords.size(); ++p) {
    if (!v.coords[p].is_zero())
      return {p, v.coords[p].leading_monomial(), v.coords[p].leading_coeff()};
  }
  throw error("zero module element has no lead");
}

inline ModuleElement sub_scaled(const ModuleElement& a, const ModuleElement& b,
                                const Scalar& c, const Monomial& m) {
  ModuleElement r;
  r.coords.reserve(a.coords.size());
  for (std::size_t p = 0; p < a.coords.size(); ++p)
    r.coords.push_back(a.coords[p] - b.coords[p].times_term(c, m));
  return r;
}

/// Head-reduce v by basis until its lead is irreducible (or v is zero).
inline ModuleElement module_head_reduce(ModuleElement v,
                                        const std::vector<ModuleElement>& basis) {
  bool progress = true;
  while (progress && !v.is_zero()) {
    progress = false;
    ModuleLead lv = module_lead(v);
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      ModuleLead lg = module_lead(g);
      if (lg.pos != lv.pos || !divides(lg.mon, lv.mon)) continue;
      Scalar c = lv.coeff / lg.coeff;
      v = sub_scaled(v, g, c, quotient(lv.mon, lg.mon));
      progress = true;
      break;
    }
  }
  return v;
}

/// Plain Buchberger over a free module with position-over-term order.
inline std::vector<ModuleElement> module_groebner(
    std::vector<ModuleElement> gens) {
  std::vector<ModuleElement> G;
  for (auto& g : gens)
    if (!g.is_zero()) G.push_back(std::move(g));
  std::vector<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t j = 1; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pending.push_back({i, j});
  while (!pending.empty()) {
    auto [i, j] = pending.back();
    pending.pop_back();
    ModuleLead li = module_lead(G[i]);
    ModuleLead lj = module_lead(G[j]);
    if (li.pos != lj.pos) continue;  // no S-vector across positions
    Monomial l = lcm(li.mon, lj.mon);
    ModuleElement s = sub_scaled(
        [&] {
          ModuleElement tmp;
          tmp.coords.reserve(G[i].coords.size());
          Scalar ci = 1 / li.coeff;
          Monomial mi = quotient(l, li.mon);
          for (const auto& c : G[i].coords)
            tmp.coords.push_back(c.times_term(ci, mi));
          return tmp;
        }(),
        G[j], 1 / lj.coeff, quotient(l, lj.mon));
    s = module_head_reduce(std::move(s), G);
    if (!s.is_zero()) {
      for (std::size_t k = 0; k < G.size(); ++k) pending.push_back({k, G.size()});
      G.push_back(std::move(s));
    }
  }
  return G;
}

}  // namespace detail

/// Generators of the syzygy module of the given columns: the kernel of
/// R^m -> R^r sending the i-th unit vector to columns[i]. Computed by a
/// module Groebner basis of the graph elements (v_i | e_i) in R^(r+m)
/// under position-over-term with the first r positions dominating; basis
/// elements supported entirely in the last m positions are the syzygies.
inline std::vector<ModuleElement> syzygy_basis(
    const std::vector<ModuleElement>& columns, const AmbientPtr& amb) {
  if (columns.empty()) return {};
  const std::size_t r = columns[0].rank();
  const std::size_t m = columns.size();
  for (const auto& c : columns)
    if (c.rank() != r) throw error("rank mismatch among module columns");

  std::vector<ModuleElement> graph;
  graph.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    ModuleElement w;
    w.coords = columns[i].coords;
    for (std::size_t j = 0; j < m; ++j)
      w.coords.push_back(i == j ? Polynomial::one(amb) : Polynomial::zero(amb));
    graph.push_back(std::move(w));
  }
  auto G = detail::module_groebner(std::move(graph));
  std::vector<ModuleElement> syz;
  for (const auto& g : G) {
    bool pure = true;
    for (std::size_t p = 0; p < r && pure; ++p)
      if (!g.coords[p].is_zero()) pure = false;
    if (!pure) continue;
    ModuleElement s;
    s.coords.assign(g.coords.begin() + static_cast<std::ptrdiff_t>(r),
                    g.coords.end());
    syz.push_back(std::move(s));
  }
  return syz;
}


/// One refinement step toward the largest subideal of I stable under the
/// given derivations: returns { f in I : d(f) in I for every d }, with
/// derivations presented by their values on the ambient variables
/// (indexed ders[j][var]). Denominators of the values must be units of the
/// working localisation; rows are cleared by them before the module step.
///
/// The set is computed as the image, under (c_1..c_m) -> sum c_i g_i over
/// the basis g of I, of the kernel of R^m -> (R/I)^s; the kernel is a
/// syzygy computation on the derivative columns augmented, in every target
/// coordinate, with columns for the generators of I (so the kernel is taken
/// exactly modulo I). Well-definedness: two representations of f differ by
/// a syzygy s of g, and applying d to sum s_i g_i = 0 shows
/// sum s_i d(g_i) = -sum d(s_i) g_i lies in I.
inline IdealHandle stable_refine(
    const IdealHandle& I,
    const std::vector<std::vector<RationalFunction>>& ders) {
  const AmbientPtr& amb = I.ambient();
  const auto& gens = I.basis();
  const std::size_t m = gens.size();
  const std::size_t s = ders.size();
  if (m == 0 || s == 0) return I;

  // Derivative matrix D[j][i] = d_j(g_i) via the chain rule.
  std::vector<std::vector<RationalFunction>> D(s);
  for (std::size_t j = 0; j < s; ++j) {
    if (ders[j].size() != amb->size())
      throw error("derivation must assign a value to every variable");
    D[j].reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      RationalFunction acc = RationalFunction::zero(amb);
      for (std::size_t a = 0; a < amb->size(); ++a) {
        if (ders[j][a].is_zero()) continue;
        Polynomial dg = gens[i].derivative(a);
        if (dg.is_zero()) continue;
        acc = acc + RationalFunction(dg) * ders[j][a];
      }
      D[j].push_back(acc);
    }
  }

  // Clear denominators row by row (denominators are units by contract).
  std::vector<std::vector<Polynomial>> P(s);
  for (std::size_t j = 0; j < s; ++j) {
    P[j].reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      Polynomial entry = D[j][i].num();
      for (std::size_t k = 0; k < m; ++k)
        if (k != i) entry = entry * D[j][k].den();
      P[j].push_back(std::move(entry));
    }
  }

  std::vector<ModuleElement> columns;
  for (std::size_t i = 0; i < m; ++i) {
    ModuleElement col;
    col.coords.reserve(s);
    for (std::size_t j = 0; j < s; ++j) col.coords.push_back(P[j][i]);
    columns.push_back(std::move(col));
  }
  for (std::size_t j = 0; j < s; ++j) {
    for (const auto& h : gens) {
      ModuleElement col;
      for (std::size_t jj = 0; jj < s; ++jj)
        col.coords.push_back(jj == j ? h : Polynomial::zero(amb));
      columns.push_back(std::move(col));
    }
  }

  auto syz = syzygy_basis(columns, amb);
  std::vector<Polynomial> out;
  for (const auto& c : syz) {
    Polynomial f = Polynomial::zero(amb);
    for (std::size_t i = 0; i < m; ++i) f = f + c.coords[i] * gens[i];
    if (!f.is_zero()) out.push_back(std::move(f));
  }
  return IdealHandle::from_generators(std::move(out), amb);
}

}  // namespace biderive
