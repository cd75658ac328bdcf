#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "biderive/ideal.hpp"

namespace biderive {

struct AlgebraOptions {
  bool asserted_domain = false;
  /// Free scalars may not appear in relations. Internal constructions
  /// (function fields with an algebraic part) relax this.
  bool check_scalar_free = true;
  /// Skip the pairwise inverted-element nonvanishing validation.
  bool skip_inverted_validation = false;
};

/// A finitely presented localized Q-algebra: polynomial ring on `vars`
/// modulo `relations`, with the `inverted` elements made units, and a
/// designated subset of variables acting as function-field scalars (every
/// nonzero polynomial in scalars is a unit). Primality of the relation
/// ideal is a recorded user assertion, never verified.
class AlgebraPresentation {
 public:
  using Options = AlgebraOptions;

  static std::shared_ptr<const AlgebraPresentation> make(
      AmbientPtr ambient, std::vector<std::string> scalar_vars,
      std::vector<Polynomial> relations, std::vector<Polynomial> inverted,
      AlgebraOptions opts = {}) {
    auto alg = std::shared_ptr<AlgebraPresentation>(new AlgebraPresentation);
    alg->amb_ = ambient;
    alg->scalar_flags_.assign(ambient->size(), false);
    for (const auto& s : scalar_vars)
      alg->scalar_flags_[ambient->index_or_throw(s)] = true;
    for (const auto& r : relations) require_same_ambient(r.ambient(), ambient);
    for (const auto& f : inverted) require_same_ambient(f.ambient(), ambient);
    alg->relations_ = std::move(relations);
    alg->inverted_ = std::move(inverted);
    alg->asserted_domain_ = opts.asserted_domain;

    if (opts.check_scalar_free) {
      for (const auto& r : alg->relations_)
        for (std::size_t i = 0; i < ambient->size(); ++i)
          if (alg->scalar_flags_[i] && r.involves(i))
            throw error("scalar variable " + ambient->var(i) +
                        " appears in a relation");
    }

    alg->relation_handle_ =
        IdealHandle::from_generators(alg->relations_, ambient);
    alg->saturated_ = saturate_by_all(alg->relation_handle_, alg->inverted_);
    if (alg->saturated_.is_unit_ideal() && !alg->relations_.empty())
      throw error("relations become the unit ideal after localisation");

    if (!opts.skip_inverted_validation) {
      for (std::size_t i = 0; i < alg->inverted_.size(); ++i) {
        if (alg->inverted_[i].is_zero())
          throw error("cannot invert the zero element");
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < alg->inverted_.size(); ++j)
          if (j != i) others.push_back(alg->inverted_[j]);
        IdealHandle sat = saturate_by_all(alg->relation_handle_, others);
        if (sat.contains(alg->inverted_[i]))
          throw error("inverted element vanishes on the localisation: " +
                      alg->inverted_[i].str());
      }
    }
    return alg;
  }

  /// Plain polynomial ring on the given variables.
  static std::shared_ptr<const AlgebraPresentation> polynomial_ring(
      AmbientPtr ambient) {
    return make(std::move(ambient), {}, {}, {});
  }

  const AmbientPtr& ambient() const { return amb_; }
  std::size_t nvars() const { return amb_->size(); }
  bool is_scalar(std::size_t v) const { return scalar_flags_[v]; }

  std::vector<std::string> scalar_vars() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < amb_->size(); ++i)
      if (scalar_flags_[i]) out.push_back(amb_->var(i));
    return out;
  }

  bool has_scalars() const {
    for (bool f : scalar_flags_)
      if (f) return true;
    return false;
  }

  const std::vector<Polynomial>& relations() const { return relations_; }
  const std::vector<Polynomial>& inverted() const { return inverted_; }
  bool asserted_domain() const { return asserted_domain_; }

  const IdealHandle& relation_ideal() const { return relation_handle_; }
  /// Relations saturated by the inverted elements; the membership avatar of
  /// the zero ideal of the localized quotient.
  const IdealHandle& saturated_relations() const { return saturated_; }

  Polynomial reduce(const Polynomial& p) const { return saturated_.reduce(p); }

  RationalFunction reduce(const RationalFunction& f) const {
    if (f.is_polynomial()) return RationalFunction(reduce(f.num()));
    Polynomial d = reduce(f.den());
    if (d.is_zero())
      throw error("denominator vanishes modulo the relations: " + f.den().str());
    return RationalFunction::make(reduce(f.num()), std::move(d));
  }

  bool is_zero_mod(const RationalFunction& f) const {
    return saturated_.contains(f.num());
  }

  bool equal_mod(const RationalFunction& a, const RationalFunction& b) const {
    return saturated_.contains(a.num() * b.den() - b.num() * a.den());
  }

  /// Is v a unit of the localized quotient? Fast syntactic path (products of
  /// inverted elements and scalar polynomials), then the exact test: v is a
  /// unit iff saturating (relations + v) by the inverted elements meets the
  /// scalar subring in something nonzero modulo the relations.
  bool is_unit(const Polynomial& v) const {
    if (v.is_zero()) return false;
    if (saturated_.contains(v)) return false;
    if (is_unit_syntactic(v)) return true;
    std::vector<Polynomial> gens = relations_;
    gens.push_back(v);
    IdealHandle J = saturate_by_all(IdealHandle::from_generators(gens, amb_),
                                    inverted_);
    IdealHandle E = elimination_ideal(J, scalar_vars());
    for (const auto& g : E.basis())
      if (!saturated_.contains(g)) return true;
    return false;
  }

  /// Legal elements of the algebra: the denominator must be a unit.
  bool legal(const RationalFunction& f) const {
    return f.is_polynomial() || is_unit(f.den());
  }

  void require_legal(const RationalFunction& f) const {
    if (!legal(f))
      throw error("illegal denominator (not a unit of the localisation): " +
                  f.den().str());
  }

  /// Membership of f in the extension of I to the localized quotient:
  /// numerator membership in (I + relations) saturated by the inverted
  /// elements and by the denominator.
  bool member_localized(const RationalFunction& f, const IdealHandle& I) const {
    require_same_ambient(I.ambient(), amb_);
    return member_in_effective(f, effective_ideal(I));
  }

  /// Same test against a pre-saturated effective ideal (avoids recomputing
  /// the saturation in membership loops).
  bool member_in_effective(const RationalFunction& f,
                           const IdealHandle& target) const {
    if (f.is_polynomial() || f.den().is_constant())
      return target.contains(f.num());
    return ideal_saturation(target, f.den()).contains(f.num());
  }

  /// (I + relations) saturated by the inverted elements: the polynomial
  /// avatar of the ideal I generates in the localized quotient.
  IdealHandle effective_ideal(const IdealHandle& I) const {
    std::vector<Polynomial> gens = I.generators();
    for (const auto& r : relations_) gens.push_back(r);
    return saturate_by_all(IdealHandle::from_generators(std::move(gens), amb_),
                           inverted_);
  }

 private:
  AlgebraPresentation() = default;

  bool is_unit_syntactic(const Polynomial& v) const {
    Polynomial rest = v;
    bool progress = true;
    while (progress) {
      if (rest.is_constant()) return !rest.is_zero();
      if (involves_only_scalars(rest)) return !saturated_.contains(rest);
      progress = false;
      for (const auto& f : inverted_) {
        if (f.is_constant()) continue;
        auto [q, r] = divide_single(rest, f);
        if (r.is_zero() && !q.is_zero()) {
          rest = std::move(q);
          progress = true;
          break;
        }
      }
    }
    return false;
  }

  bool involves_only_scalars(const Polynomial& p) const {
    for (std::size_t i = 0; i < amb_->size(); ++i)
      if (!scalar_flags_[i] && p.involves(i)) return false;
    return true;
  }

  AmbientPtr amb_;
  std::vector<bool> scalar_flags_;
  std::vector<Polynomial> relations_;
  std::vector<Polynomial> inverted_;
  bool asserted_domain_ = false;
  IdealHandle relation_handle_;
  IdealHandle saturated_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraPresentation>;

/// A derivation on an algebra presentation, given by its values on the
/// generators and evaluated everywhere else through the chain rule.
struct DerivationSpec {
  AlgebraPtr algebra;
  std::vector<RationalFunction> values;

  static DerivationSpec zero(const AlgebraPtr& alg) {
    DerivationSpec d;
    d.algebra = alg;
    d.values.assign(alg->nvars(),
                    RationalFunction::zero(alg->ambient()));
    return d;
  }

  RationalFunction apply(const RationalFunction& f) const {
    const AmbientPtr& amb = algebra->ambient();
    require_same_ambient(f.ambient(), amb);
    RationalFunction acc = RationalFunction::zero(amb);
    for (std::size_t a = 0; a < amb->size(); ++a) {
      if (values[a].is_zero()) continue;
      RationalFunction df = f.derivative(a);
      if (df.is_zero()) continue;
      acc = acc + df * values[a];
    }
    return acc;
  }

  /// The values must respect the relations: the chain-rule image of every
  /// relation generator must lie in the localized relation ideal.
  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    for (const auto& v : values)
      if (!algebra->legal(v)) bad.push_back("illegal value denominator: " + v.str());
    for (const auto& r : algebra->relations()) {
      RationalFunction img = apply(RationalFunction(r));
      if (!algebra->member_localized(img, IdealHandle::zero(algebra->ambient())))
        bad.push_back("derivation does not respect relation " + r.str() +
                      "; image " + img.str());
    }
    return bad;
  }

  bool is_zero() const {
    for (const auto& v : values)
      if (!v.is_zero()) return false;
    return true;
  }
};

}  // namespace biderive
