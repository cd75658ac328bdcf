#pragma once

#include <random>
#include <string>
#include <vector>

#include "biderive/algebra.hpp"

namespace biderive {

/// Separable Noether-style data for an algebra S: variables y algebraically
/// independent over the scalars with every remaining generator b_i
/// separably algebraic over k(y, b_1..b_{i-1}), witnessed by a minimal
/// polynomial P_i. Minimality of the P_i is a user assertion (verifying it
/// would need factorization); vanishing, separability, and the algebraic
/// independence of y are machine-checked.
struct NoetherData {
  std::vector<std::string> y_list;
  std::vector<std::string> b_list;
  /// P_i over S's ambient extended by `tvar`; coefficients may involve only
  /// scalars, y_list, and b_1..b_{i-1}.
  std::vector<Polynomial> minpolys;
  std::string tvar = "_t";

  Polynomial derivative_product(const AlgebraPtr& S) const {
    Polynomial f = Polynomial::one(S->ambient());
    for (std::size_t i = 0; i < b_list.size(); ++i) {
      const AmbientPtr& pamb = minpolys[i].ambient();
      Polynomial dP = minpolys[i].derivative(pamb->index_or_throw(tvar));
      f = f * transport(dP, S->ambient(), {{tvar, b_list[i]}});
    }
    return f;
  }
};

/// Checks the data against S; returns human-readable problems (empty = ok).
inline std::vector<std::string> verify_noether(const NoetherData& nd,
                                               const AlgebraPtr& S) {
  std::vector<std::string> bad;
  const AmbientPtr& amb = S->ambient();
  std::set<std::string> seen;
  for (const auto& v : nd.y_list) {
    if (!amb->index(v)) bad.push_back("unknown y variable " + v);
    if (!seen.insert(v).second) bad.push_back("duplicate variable " + v);
  }
  for (const auto& v : nd.b_list) {
    if (!amb->index(v)) bad.push_back("unknown b variable " + v);
    if (!seen.insert(v).second) bad.push_back("duplicate variable " + v);
  }
  for (std::size_t i = 0; i < amb->size(); ++i) {
    if (S->is_scalar(i)) {
      if (seen.count(amb->var(i)))
        bad.push_back("scalar " + amb->var(i) + " listed in noether data");
    } else if (!seen.count(amb->var(i))) {
      bad.push_back("variable " + amb->var(i) + " missing from noether data");
    }
  }
  if (!bad.empty()) return bad;
  if (nd.minpolys.size() != nd.b_list.size()) {
    bad.push_back("need one minimal polynomial per algebraic generator");
    return bad;
  }

  // Algebraic independence of y over the scalars.
  std::vector<std::string> keep = nd.y_list;
  for (const auto& s : S->scalar_vars()) keep.push_back(s);
  IdealHandle dep = elimination_ideal(S->saturated_relations(), keep);
  if (!dep.is_zero_ideal())
    bad.push_back("y variables are algebraically dependent: " +
                  dep.basis()[0].str());

  // Minimal polynomials: allowed coefficients, vanishing, separability.
  for (std::size_t i = 0; i < nd.b_list.size(); ++i) {
    const Polynomial& P = nd.minpolys[i];
    const AmbientPtr& pamb = P.ambient();
    auto t_idx = pamb->index(nd.tvar);
    if (!t_idx) {
      bad.push_back("minimal polynomial for " + nd.b_list[i] +
                    " lacks the formal variable " + nd.tvar);
      continue;
    }
    if (P.degree_in(*t_idx) == 0) {
      bad.push_back("minimal polynomial for " + nd.b_list[i] +
                    " does not involve " + nd.tvar);
      continue;
    }
    std::set<std::string> allowed(nd.y_list.begin(), nd.y_list.end());
    for (const auto& s : S->scalar_vars()) allowed.insert(s);
    for (std::size_t j = 0; j < i; ++j) allowed.insert(nd.b_list[j]);
    allowed.insert(nd.tvar);
    for (std::size_t v = 0; v < pamb->size(); ++v)
      if (P.involves(v) && !allowed.count(pamb->var(v)))
        bad.push_back("minimal polynomial for " + nd.b_list[i] +
                      " involves disallowed variable " + pamb->var(v));

    Polynomial Pb = transport(P, amb, {{nd.tvar, nd.b_list[i]}});
    if (!S->saturated_relations().contains(Pb))
      bad.push_back("P(" + nd.b_list[i] + ") does not vanish in the algebra");
    Polynomial dP = transport(P.derivative(*t_idx), amb,
                              {{nd.tvar, nd.b_list[i]}});
    if (S->saturated_relations().contains(dP))
      bad.push_back("inseparable: dP/dt(" + nd.b_list[i] + ") vanishes");
  }
  return bad;
}

/// Convenience construction of Noether data: greedily collects an
/// algebraically independent set of variables (retrying with reshuffled
/// orders under the seeded budget), then reads off minimal polynomials for
/// the remaining generators from elimination ideals under an order that
/// makes the generator dominant. Verification, not this helper, is the
/// contract.
inline NoetherData auto_noether(const AlgebraPtr& S, int retries = 8,
                                std::uint64_t seed = 0x5eed) {
  const AmbientPtr& amb = S->ambient();
  std::vector<std::string> nonscalar;
  for (std::size_t i = 0; i < amb->size(); ++i)
    if (!S->is_scalar(i)) nonscalar.push_back(amb->var(i));
  std::vector<std::string> scalars = S->scalar_vars();

  std::mt19937_64 rng(seed);
  std::vector<std::string> order = nonscalar;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    if (attempt > 0) std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::string> ys;
    for (const auto& v : order) {
      std::vector<std::string> keep = ys;
      keep.push_back(v);
      for (const auto& s : scalars) keep.push_back(s);
      if (elimination_ideal(S->saturated_relations(), keep).is_zero_ideal())
        ys.push_back(v);
    }
    NoetherData nd;
    // keep ambient order for determinism of the result
    for (const auto& v : nonscalar)
      if (std::find(ys.begin(), ys.end(), v) != ys.end())
        nd.y_list.push_back(v);
      else
        nd.b_list.push_back(v);

    bool ok = true;
    for (std::size_t i = 0; i < nd.b_list.size() && ok; ++i) {
      // Vanishing ideal of b_i over k[y, b_1..b_{i-1}], with b_i dominant:
      // lex with the eliminated block first, then b_i, gives basis elements
      // whose b_i-degree is minimal over the ideal.
      std::vector<std::string> context = scalars;
      for (const auto& y : nd.y_list) context.push_back(y);
      for (std::size_t j = 0; j < i; ++j) context.push_back(nd.b_list[j]);
      std::set<std::string> kept(context.begin(), context.end());
      kept.insert(nd.b_list[i]);
      std::vector<std::string> eliminated;
      for (const auto& v : amb->vars())
        if (!kept.count(v)) eliminated.push_back(v);
      std::vector<std::string> work_vars = eliminated;
      work_vars.push_back(nd.b_list[i]);
      for (const auto& v : context) work_vars.push_back(v);
      AmbientPtr work = Ambient::make(work_vars, MonomialOrder::Lex);
      std::vector<Polynomial> gens;
      for (const auto& g : S->saturated_relations().basis())
        gens.push_back(transport(g, work));
      auto basis = reduced_groebner_basis(std::move(gens), work);
      const std::size_t bpos = eliminated.size();
      const Polynomial* best = nullptr;
      std::uint32_t best_deg = 0;
      for (const auto& g : basis) {
        bool pure = true;
        for (std::size_t e = 0; e < eliminated.size() && pure; ++e)
          if (g.involves(e)) pure = false;
        if (!pure) continue;
        std::uint32_t dg = g.degree_in(bpos);
        if (dg == 0) continue;
        if (!best || dg < best_deg) {
          best = &g;
          best_deg = dg;
        }
      }
      if (!best) {
        ok = false;
        break;
      }
      // express over S's ambient + tvar
      std::vector<std::string> pvars = amb->vars();
      pvars.push_back(nd.tvar);
      AmbientPtr pamb = Ambient::make(pvars, amb->order());
      nd.minpolys.push_back(
          transport(*best, pamb, {{nd.b_list[i], nd.tvar}}));
    }
    if (ok && verify_noether(nd, S).empty()) return nd;
  }
  throw error("could not construct separable normalisation data; supply it");
}

}  // namespace biderive
