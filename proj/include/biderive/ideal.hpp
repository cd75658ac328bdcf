#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <span>
#include <vector>

#include "biderive/substitute.hpp"

namespace biderive {

/// Remainder of multivariate division of f by the (ordered) list basis.
inline Polynomial normal_form(const Polynomial& f,
                              std::span<const Polynomial> basis) {
  Polynomial r = Polynomial::zero(f.ambient());
  Polynomial h = f;
  while (!h.is_zero()) {
    bool reduced = false;
    const Monomial& lh = h.leading_monomial();
    for (const Polynomial& g : basis) {
      if (g.is_zero()) continue;
      if (divides(g.leading_monomial(), lh)) {
        Scalar c = h.leading_coeff() / g.leading_coeff();
        Monomial m = quotient(lh, g.leading_monomial());
        h = h - g.times_term(c, m);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      Polynomial lt =
          Polynomial::monomial_term(h.ambient(), lh, h.leading_coeff());
      r = r + lt;
      h = h - lt;
    }
  }
  return r;
}

inline Polynomial spoly(const Polynomial& f, const Polynomial& g) {
  Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  Scalar cf = 1 / f.leading_coeff();
  Scalar cg = 1 / g.leading_coeff();
  return f.times_term(cf, quotient(l, f.leading_monomial())) -
         g.times_term(cg, quotient(l, g.leading_monomial()));
}

/// Buchberger with the product (coprime) and chain criteria, normal
/// selection: the pending pair with the smallest lcm under the ambient
/// order is processed first, ties broken by index. Returns the unique
/// reduced basis, monic, sorted ascending by leading monomial.
inline std::vector<Polynomial> reduced_groebner_basis(
    std::vector<Polynomial> gens, const AmbientPtr& amb) {
  std::vector<Polynomial> G;
  for (auto& g : gens)
    if (!g.is_zero()) G.push_back(g.monic());

  struct Pair {
    std::size_t i, j;
    Monomial l;
  };
  const MonomialOrder ord = amb->order();
  auto pair_less = [ord](const Pair& a, const Pair& b) {
    int c = monomial_cmp(a.l, b.l, ord);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };

  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> pending_idx;
  auto push_pairs_for = [&](std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      pending.push_back(
          {i, n, lcm(G[i].leading_monomial(), G[n].leading_monomial())});
      pending_idx.insert({i, n});
    }
  };
  for (std::size_t n = 1; n < G.size(); ++n) push_pairs_for(n);

  while (!pending.empty()) {
    auto it = std::min_element(pending.begin(), pending.end(), pair_less);
    Pair p = *it;
    pending.erase(it);
    pending_idx.erase({p.i, p.j});

    const Monomial& li = G[p.i].leading_monomial();
    const Monomial& lj = G[p.j].leading_monomial();
    if (coprime(li, lj)) continue;  // product criterion
    bool chained = false;
    for (std::size_t k = 0; k < G.size() && !chained; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!divides(G[k].leading_monomial(), p.l)) continue;
      auto key1 = std::minmax(p.i, k);
      auto key2 = std::minmax(p.j, k);
      if (!pending_idx.count({key1.first, key1.second}) &&
          !pending_idx.count({key2.first, key2.second}))
        chained = true;  // chain criterion
    }
    if (chained) continue;

    Polynomial r = normal_form(spoly(G[p.i], G[p.j]), G);
    if (!r.is_zero()) {
      G.push_back(r.monic());
      push_pairs_for(G.size() - 1);
    }
  }

  // Minimalize: drop elements whose leading monomial is divisible by
  // another's.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      if (divides(G[j].leading_monomial(), G[i].leading_monomial())) {
        if (G[j].leading_monomial() == G[i].leading_monomial() && j > i)
          continue;  // keep the first of equal leading monomials
        redundant = true;
      }
    }
    if (!redundant) minimal.push_back(G[i]);
  }

  // Interreduce tails.
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial r = normal_form(minimal[i], others);
    if (!r.is_zero()) reduced.push_back(r.monic());
  }

  std::sort(reduced.begin(), reduced.end(),
            [ord](const Polynomial& a, const Polynomial& b) {
              return monomial_cmp(a.leading_monomial(), b.leading_monomial(),
                                  ord) < 0;
            });
  return reduced;
}

/// An ideal with its reduced Groebner basis, computed eagerly at
/// construction. Immutable afterwards; identical input yields a
/// bit-identical basis.
class IdealHandle {
 public:
  static IdealHandle from_generators(std::vector<Polynomial> gens,
                                     AmbientPtr amb) {
    for (const auto& g : gens) require_same_ambient(g.ambient(), amb);
    IdealHandle h;
    h.amb_ = amb;
    h.gens_ = gens;
    h.basis_ = reduced_groebner_basis(std::move(gens), amb);
    return h;
  }

  static IdealHandle zero(AmbientPtr amb) {
    return from_generators({}, std::move(amb));
  }

  static IdealHandle unit(AmbientPtr amb) {
    return from_generators({Polynomial::one(amb)}, amb);
  }

  const AmbientPtr& ambient() const { return amb_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const std::vector<Polynomial>& basis() const { return basis_; }

  bool is_zero_ideal() const { return basis_.empty(); }
  bool is_unit_ideal() const {
    return basis_.size() == 1 && basis_[0].is_constant();
  }

  Polynomial reduce(const Polynomial& f) const {
    require_same_ambient(f.ambient(), amb_);
    return normal_form(f, basis_);
  }

  bool contains(const Polynomial& f) const { return reduce(f).is_zero(); }

  bool operator==(const IdealHandle& o) const {
    if (basis_.size() != o.basis_.size()) return false;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] != o.basis_[i]) return false;
    return true;
  }
  bool operator!=(const IdealHandle& o) const { return !(*this == o); }

 private:
  AmbientPtr amb_;
  std::vector<Polynomial> gens_;
  std::vector<Polynomial> basis_;
};

inline IdealHandle groebner_basis(std::vector<Polynomial> gens, AmbientPtr amb) {
  return IdealHandle::from_generators(std::move(gens), std::move(amb));
}

inline Polynomial normal_form(const Polynomial& f, const IdealHandle& I) {
  return I.reduce(f);
}

inline bool ideal_membership(const Polynomial& f, const IdealHandle& I) {
  return I.contains(f);
}

/// J subseteq I, tested generator-wise.
inline bool ideal_contains(const IdealHandle& I, const IdealHandle& J) {
  require_same_ambient(I.ambient(), J.ambient());
  for (const auto& g : J.basis())
    if (!I.contains(g)) return false;
  return true;
}

inline bool ideal_equal(const IdealHandle& I, const IdealHandle& J) {
  return I == J;  // reduced bases are canonical
}

namespace detail {

/// Move p into an extended/permuted lex ambient for elimination work.
inline AmbientPtr elimination_ambient(const AmbientPtr& amb,
                                      const std::vector<std::string>& eliminate,
                                      const std::vector<std::string>& keep) {
  std::vector<std::string> vars = eliminate;
  vars.insert(vars.end(), keep.begin(), keep.end());
  return Ambient::make(std::move(vars), MonomialOrder::Lex);
}

}  // namespace detail

/// I intersect k[keep]: lex basis over the permuted ambient with eliminated
/// variables ordered first, keeping basis elements free of them. The result
/// lives in the original ambient.
inline IdealHandle elimination_ideal(const IdealHandle& I,
                                     const std::vector<std::string>& keep) {
  const AmbientPtr& amb = I.ambient();
  std::set<std::string> keepset(keep.begin(), keep.end());
  std::vector<std::string> eliminate;
  std::vector<std::string> kept;
  for (const auto& v : amb->vars()) {
    if (keepset.count(v))
      kept.push_back(v);
    else
      eliminate.push_back(v);
  }
  AmbientPtr work = detail::elimination_ambient(amb, eliminate, kept);
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(transport(g, work));
  auto basis = reduced_groebner_basis(std::move(gens), work);
  std::vector<Polynomial> out;
  for (const auto& g : basis) {
    bool pure = true;
    for (std::size_t i = 0; i < eliminate.size() && pure; ++i)
      if (g.involves(i)) pure = false;
    if (pure) out.push_back(transport(g, amb));
  }
  return IdealHandle::from_generators(std::move(out), amb);
}

/// Fresh helper variable name not colliding with ambient variables.
inline std::string fresh_var_name(const AmbientPtr& amb, std::string stem) {
  std::string name = stem;
  int n = 0;
  while (amb->index(name)) name = stem + std::to_string(n++);
  return name;
}

/// I cap J via the t*I + (1-t)*J elimination trick.
inline IdealHandle ideal_intersect(const IdealHandle& I, const IdealHandle& J) {
  require_same_ambient(I.ambient(), J.ambient());
  const AmbientPtr& amb = I.ambient();
  std::string t = fresh_var_name(amb, "_t");
  std::vector<std::string> vars = {t};
  for (const auto& v : amb->vars()) vars.push_back(v);
  AmbientPtr work = Ambient::make(vars, MonomialOrder::Lex);
  Polynomial tv = Polynomial::variable(work, t);
  Polynomial one_minus_t = Polynomial::one(work) - tv;
  std::vector<Polynomial> gens;
  for (const auto& g : I.basis()) gens.push_back(tv * transport(g, work));
  for (const auto& g : J.basis())
    gens.push_back(one_minus_t * transport(g, work));
  auto basis = reduced_groebner_basis(std::move(gens), work);
  std::vector<Polynomial> out;
  for (const auto& g : basis)
    if (!g.involves(0)) out.push_back(transport(g, amb));
  return IdealHandle::from_generators(std::move(out), amb);
}

/// Saturation I : f^infty via elimination of t from I + (1 - t f).
inline IdealHandle ideal_saturation(const IdealHandle& I, const Polynomial& f) {
  require_same_ambient(I.ambient(), f.ambient());
  if (f.is_zero()) throw error("cannot saturate by zero");
  const AmbientPtr& amb = I.ambient();
  std::string t = fresh_var_name(amb, "_t");
  std::vector<std::string> vars = {t};
  for (const auto& v : amb->vars()) vars.push_back(v);
  AmbientPtr work = Ambient::make(vars, MonomialOrder::Lex);
  std::vector<Polynomial> gens;
  for (const auto& g : I.basis()) gens.push_back(transport(g, work));
  gens.push_back(Polynomial::one(work) -
                 Polynomial::variable(work, t) * transport(f, work));
  auto basis = reduced_groebner_basis(std::move(gens), work);
  std::vector<Polynomial> out;
  for (const auto& g : basis)
    if (!g.involves(0)) out.push_back(transport(g, amb));
  return IdealHandle::from_generators(std::move(out), amb);
}

/// Ideal quotient I : f, via (I cap (f)) / f.
inline IdealHandle ideal_quotient(const IdealHandle& I, const Polynomial& f) {
  require_same_ambient(I.ambient(), f.ambient());
  if (f.is_zero()) throw error("cannot take quotient by zero");
  IdealHandle cap =
      ideal_intersect(I, IdealHandle::from_generators({f}, I.ambient()));
  std::vector<Polynomial> out;
  for (const auto& g : cap.basis()) {
    auto [q, r] = divide_single(g, f);
    if (!r.is_zero())
      throw error("internal: quotient division not exact");
    out.push_back(std::move(q));
  }
  return IdealHandle::from_generators(std::move(out), I.ambient());
}

/// Radical membership via the Rabinowitsch trick: f in sqrt(I) iff
/// 1 in I + (1 - t f).
inline bool radical_membership(const Polynomial& f, const IdealHandle& I) {
  require_same_ambient(f.ambient(), I.ambient());
  if (f.is_zero()) return true;
  const AmbientPtr& amb = I.ambient();
  std::string t = fresh_var_name(amb, "_t");
  std::vector<std::string> vars = {t};
  for (const auto& v : amb->vars()) vars.push_back(v);
  AmbientPtr work = Ambient::make(vars, MonomialOrder::Lex);
  std::vector<Polynomial> gens;
  for (const auto& g : I.basis()) gens.push_back(transport(g, work));
  gens.push_back(Polynomial::one(work) -
                 Polynomial::variable(work, t) * transport(f, work));
  auto basis = reduced_groebner_basis(std::move(gens), work);
  return basis.size() == 1 && basis[0].is_constant();
}

/// Saturation by a list, done in one elimination against the product;
/// I : (fg)^infty = (I : f^infty) : g^infty.
inline IdealHandle saturate_by_all(const IdealHandle& I,
                                   const std::vector<Polynomial>& fs) {
  if (fs.empty()) return I;
  Polynomial prod = Polynomial::one(I.ambient());
  for (const auto& f : fs) prod = prod * f;
  if (prod.is_constant()) return I;
  return ideal_saturation(I, prod);
}

}  // namespace biderive
