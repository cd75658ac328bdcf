#pragma once

#include <string>
#include <vector>

#include "biderive/tensor.hpp"

namespace biderive {

/// An affine variety carrying a biderivation on its coordinate ring.
/// Irreducibility is a user assertion recorded on the presentation.
struct BVariety {
  BracketTable table;
  std::string label;

  static BVariety make(BracketTable t, std::string label) {
    if (!t.well_defined().passed)
      throw error("bracket table fails its quotient compatibility check");
    return {std::move(t), std::move(label)};
  }

  const AlgebraPtr& algebra() const { return table.algebra(); }
  const AmbientPtr& ambient() const { return table.ambient(); }
};

inline bool is_b_subvariety(const BVariety& X, const IdealHandle& Z,
                            std::string* witness = nullptr) {
  return is_bidifferential_ideal(X.table, Z, witness);
}

/// The maximal ideal of a rational point, over the non-scalar variables;
/// coordinates may involve the scalars.
inline IdealHandle point_ideal(const AlgebraPtr& alg,
                               const std::vector<RationalFunction>& coords) {
  const AmbientPtr& amb = alg->ambient();
  std::vector<std::size_t> nonscalar;
  for (std::size_t i = 0; i < amb->size(); ++i)
    if (!alg->is_scalar(i)) nonscalar.push_back(i);
  if (coords.size() != nonscalar.size())
    throw error("point must assign every non-scalar variable");
  std::vector<Polynomial> gens;
  for (std::size_t k = 0; k < nonscalar.size(); ++k) {
    const RationalFunction& c = coords[k];
    for (std::size_t v = 0; v < amb->size(); ++v)
      if (!alg->is_scalar(v) && (c.num().involves(v) || c.den().involves(v)))
        throw error("point coordinates must lie in the scalar field");
    gens.push_back(Polynomial::variable(amb, nonscalar[k]) * c.den() -
                   c.num());
  }
  return IdealHandle::from_generators(std::move(gens), amb);
}

/// Is p a point of X at all (relations vanish, inverted elements do not)?
inline void require_on_variety(const AlgebraPtr& alg,
                               const std::vector<RationalFunction>& coords) {
  const AmbientPtr& amb = alg->ambient();
  std::vector<RationalFunction> assignment;
  std::size_t k = 0;
  for (std::size_t i = 0; i < amb->size(); ++i) {
    if (alg->is_scalar(i))
      assignment.push_back(RationalFunction(Polynomial::variable(amb, i)));
    else
      assignment.push_back(coords[k++]);
  }
  for (const auto& r : alg->relations()) {
    RationalFunction v = substitute(r, assignment, amb);
    if (!alg->is_zero_mod(v))
      throw error("point does not lie on the variety: relation " + r.str() +
                  " evaluates to " + v.str());
  }
  for (const auto& f : alg->inverted()) {
    RationalFunction v = substitute(f, assignment, amb);
    if (alg->is_zero_mod(v))
      throw error("point does not lie on the localisation: " + f.str() +
                  " vanishes there");
  }
}

/// B-point test: the maximal ideal of p must be bidifferential;
/// equivalently every table entry vanishes at p.
inline bool is_b_point(const BVariety& X,
                       const std::vector<RationalFunction>& coords,
                       std::string* witness = nullptr) {
  require_on_variety(X.algebra(), coords);
  return is_bidifferential_ideal(X.table, point_ideal(X.algebra(), coords),
                                 witness);
}

inline bool is_b_point(const BVariety& X, const std::vector<Scalar>& coords,
                       std::string* witness = nullptr) {
  std::vector<RationalFunction> rfs;
  for (const auto& c : coords)
    rfs.push_back(RationalFunction(Polynomial::constant(X.ambient(), c)));
  return is_b_point(X, rfs, witness);
}

/// phi: X -> Y is a B-morphism iff its pullback intertwines the brackets.
inline bool is_b_morphism(AlgebraMorphism& pullback, const BVariety& X,
                          const BVariety& Y, std::string* witness = nullptr) {
  if (pullback.source.get() != Y.algebra().get() ||
      pullback.target.get() != X.algebra().get())
    throw error("pullback must map k[Y] into k[X]");
  return verify_bidifferential_morphism(pullback, Y.table, X.table, witness);
}

/// Contraction of an ideal of the target along the pullback, i.e. the
/// vanishing ideal of the closure of the image of V(Z) under the morphism.
inline IdealHandle morphism_contraction(const AlgebraMorphism& phi,
                                        const IdealHandle& Z) {
  require_same_ambient(Z.ambient(), phi.target->ambient());
  AlgebraMorphism enriched = phi;
  // reuse the kernel elimination with Z added to the target's relations
  std::vector<Polynomial> rel = phi.target->relations();
  for (const auto& g : Z.generators()) rel.push_back(g);
  AlgebraOptions opts;
  opts.asserted_domain = false;
  opts.check_scalar_free = false;
  opts.skip_inverted_validation = true;
  enriched.target = AlgebraPresentation::make(
      phi.target->ambient(), phi.target->scalar_vars(), std::move(rel),
      phi.target->inverted(), opts);
  return morphism_kernel(enriched);
}

struct ImageClosureResult {
  IdealHandle ideal;
  bool input_bidifferential = true;
  bool output_bidifferential = false;
};

/// Closure of the image of a B-subvariety under a B-morphism: computed by
/// contraction, rechecked bidifferential in the source structure of the
/// pullback (the intersection of a bidifferential ideal with a
/// bidifferential subring is bidifferential there).
inline ImageClosureResult image_closure_b(const AlgebraMorphism& pullback,
                                          const BVariety& X, const BVariety& Y,
                                          const IdealHandle& Z) {
  ImageClosureResult out{IdealHandle::zero(Y.ambient()), true, false};
  out.input_bidifferential = is_bidifferential_ideal(X.table, Z);
  out.ideal = morphism_contraction(pullback, Z);
  out.output_bidifferential = is_bidifferential_ideal(Y.table, out.ideal);
  return out;
}

struct CompatibilityReport {
  std::vector<TensorCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail) return false;
    return true;
  }
  bool partial = false;
};

/// Compatible base extension check: (i) the extended table restricts to the
/// base's table, (ii) it restricts to the declared scalar table on the new
/// scalars, (iii) every supplied bidifferential witness ideal of the base
/// stays bidifferential upstairs. Without witnesses only (i)-(ii) run and
/// the verdict is partial (lifting quantifies over all ideals).
inline CompatibilityReport check_compatible_base_extension(
    const BVariety& base, const BracketTable& ext,
    const std::vector<std::vector<RationalFunction>>& declared_scalar_entries,
    const std::vector<IdealHandle>& witnesses) {
  CompatibilityReport rep;
  const AmbientPtr& bamb = base.ambient();
  const AmbientPtr& eamb = ext.ambient();
  const AlgebraPtr& ealg = ext.algebra();

  // the base's variables must appear with the base's entries
  bool ok = true;
  for (std::size_t a = 0; a < bamb->size() && ok; ++a)
    for (std::size_t b = 0; b < bamb->size() && ok; ++b) {
      std::size_t ea = eamb->index_or_throw(bamb->var(a));
      std::size_t eb = eamb->index_or_throw(bamb->var(b));
      RationalFunction expect = transport(base.table.entry(a, b), eamb);
      if (!ealg->equal_mod(ext.entry(ea, eb), expect)) {
        ok = false;
        rep.checks.push_back(
            {"restricts-to-base", CheckStatus::Fail,
             "{" + bamb->var(a) + "," + bamb->var(b) + "} = " +
                 ext.entry(ea, eb).str() + " differs from " + expect.str()});
      }
    }
  if (ok)
    rep.checks.push_back({"restricts-to-base", CheckStatus::Pass, ""});

  // declared scalar bracket on the added scalars
  std::vector<std::size_t> added;
  for (std::size_t i = 0; i < eamb->size(); ++i)
    if (ealg->is_scalar(i) && !bamb->index(eamb->var(i))) added.push_back(i);
  ok = true;
  for (std::size_t a = 0; a < added.size() && ok; ++a)
    for (std::size_t b = 0; b < added.size() && ok; ++b) {
      RationalFunction expect =
          declared_scalar_entries.empty()
              ? RationalFunction::zero(eamb)
              : declared_scalar_entries[a][b];
      if (!ealg->equal_mod(ext.entry(added[a], added[b]), expect)) {
        ok = false;
        rep.checks.push_back(
            {"restricts-to-scalars", CheckStatus::Fail,
             "{" + eamb->var(added[a]) + "," + eamb->var(added[b]) + "} = " +
                 ext.entry(added[a], added[b]).str()});
      }
    }
  if (ok)
    rep.checks.push_back({"restricts-to-scalars", CheckStatus::Pass, ""});

  if (witnesses.empty()) {
    rep.partial = true;
    rep.checks.push_back({"witness-lifting", CheckStatus::Partial,
                          "no witnesses supplied; lifting not probed"});
    return rep;
  }
  for (std::size_t w = 0; w < witnesses.size(); ++w) {
    std::string wit;
    if (!is_bidifferential_ideal(base.table, witnesses[w], &wit)) {
      rep.checks.push_back({"witness-" + std::to_string(w), CheckStatus::Partial,
                            "not bidifferential in the base; skipped"});
      continue;
    }
    std::vector<Polynomial> ext_gens;
    for (const auto& g : witnesses[w].generators())
      ext_gens.push_back(transport(g, eamb));
    bool good = is_bidifferential_ideal(
        ext, IdealHandle::from_generators(std::move(ext_gens), eamb), &wit);
    rep.checks.push_back({"witness-" + std::to_string(w),
                          good ? CheckStatus::Pass : CheckStatus::Fail,
                          good ? "" : "fails upstairs; witness " + wit});
  }
  return rep;
}

/// Algebraic scalar extension of a B-variety: adjoins a new scalar with its
/// minimal polynomial over the existing scalars; the bracket entries are
/// forced by implicit differentiation, and the step is lifting.
inline ExtensionResult extend_base_algebraic(const BVariety& X,
                                             const std::string& newvar,
                                             const Polynomial& minpoly,
                                             const std::string& tvar) {
  const AmbientPtr& pamb = minpoly.ambient();
  for (std::size_t v = 0; v < pamb->size(); ++v) {
    if (!minpoly.involves(v) || pamb->var(v) == tvar) continue;
    auto idx = X.ambient()->index(pamb->var(v));
    if (!idx || !X.algebra()->is_scalar(*idx))
      throw error("scalar minimal polynomial may involve only scalars, got " +
                  pamb->var(v));
  }
  ExtensionResult res = extend_algebraic(X.table, newvar, minpoly, tvar,
                                         /*newvar_scalar=*/true);
  res.notes.push_back("algebraic scalar extension; unique and lifting");
  return res;
}

/// Re-flag a set of variables as scalars (used to promote the right tensor
/// factor to the base field of a generic fibre).
inline BracketTable promote_to_scalars(const BracketTable& B,
                                       const std::vector<std::string>& vars) {
  const AlgebraPtr& alg = B.algebra();
  std::vector<std::string> scalars = alg->scalar_vars();
  for (const auto& v : vars) scalars.push_back(v);
  AlgebraOptions opts;
  opts.asserted_domain = alg->asserted_domain();
  opts.check_scalar_free = false;
  opts.skip_inverted_validation = true;
  AlgebraPtr next =
      AlgebraPresentation::make(alg->ambient(), scalars, alg->relations(),
                                alg->inverted(), opts);
  return BracketTable::make(next, B.entries());
}

struct GenericFibre {
  /// X_L: the tensor structure on k[X] (x) k[Y]_f with the right copies
  /// promoted to the function-field scalars of L = k(Y).
  TensorExtension total;
  BracketTable fibre_table;  // the promoted table on X_L
  /// Y_L via the self-tensor of Y; alpha's maximal ideal is its graph ideal.
  TensorExtension base_side;
  BracketTable base_table;  // the promoted table on Y_L
  /// Coordinates of the tautological generic point: Y generator -> L-scalar.
  std::vector<std::pair<std::string, std::string>> alpha;
  IdealHandle fibre_ideal;
  bool alpha_is_b_point = false;
  bool fibre_is_b_subvariety = false;
};

/// Generic fibre of a dominant B-morphism over L = k(Y): base-extends along
/// the tensor construction, promotes the right factor to scalars, and takes
/// the graph ideal as the fibre of the tautological generic point (whose
/// coordinates are the right copies of the Y generators). The flags should
/// always come back true; a false flag is a construction bug, and the
/// caller is expected to surface it.
inline GenericFibre generic_b_fibre(const AlgebraMorphism& pullback,
                                    const BracketTable& BX,
                                    const BracketTable& BY,
                                    const NoetherData& noether,
                                    std::uint64_t seed = 0xa1fa) {
  AlgebraMorphism phi = pullback;  // verified inside theorem_tensor
  TensorExtension TX = theorem_tensor(BX, BY, phi, noether, {}, seed);
  TensorExtension TY =
      theorem_tensor(BY, BY, identity_morphism(BY.algebra()), noether, {}, seed);

  std::vector<std::string> promoted;
  for (const auto& y : noether.y_list)
    promoted.push_back(TX.naming.right_rename.at(y));
  BracketTable fibre_table = promote_to_scalars(TX.table, promoted);
  std::vector<std::string> promoted_y;
  for (const auto& y : noether.y_list)
    promoted_y.push_back(TY.naming.right_rename.at(y));
  BracketTable base_table = promote_to_scalars(TY.table, promoted_y);

  std::vector<std::pair<std::string, std::string>> alpha;
  const AmbientPtr& samb = pullback.source->ambient();
  for (std::size_t i = 0; i < samb->size(); ++i)
    if (!pullback.source->is_scalar(i))
      alpha.push_back(
          {samb->var(i), TX.naming.right_rename.at(samb->var(i))});

  IdealHandle fibre_ideal = IdealHandle::from_generators(
      TX.diagonal.generators(), fibre_table.ambient());
  IdealHandle alpha_ideal = IdealHandle::from_generators(
      TY.diagonal.generators(), base_table.ambient());
  bool fibre_flag = is_bidifferential_ideal(fibre_table, fibre_ideal);
  bool alpha_flag = is_bidifferential_ideal(base_table, alpha_ideal);
  return GenericFibre{std::move(TX),    std::move(fibre_table),
                      std::move(TY),    std::move(base_table),
                      std::move(alpha), std::move(fibre_ideal),
                      alpha_flag,       fibre_flag};
}

/// Diagnostic counterpoint: the vanishing ideal of the fibre over a concrete
/// point of Y inside the un-extended structure on X.
inline IdealHandle concrete_fibre_ideal(const AlgebraMorphism& pullback,
                                        const std::vector<Scalar>& point) {
  const AmbientPtr& samb = pullback.source->ambient();
  const AmbientPtr& tamb = pullback.target->ambient();
  std::vector<Polynomial> gens;
  std::size_t k = 0;
  for (std::size_t i = 0; i < samb->size(); ++i) {
    if (pullback.source->is_scalar(i)) continue;
    if (k >= point.size()) throw error("point has too few coordinates");
    const RationalFunction& img = pullback.images[i];
    gens.push_back(img.num() - img.den().scaled(point[k]));
    ++k;
  }
  if (k != point.size()) throw error("point has too many coordinates");
  return IdealHandle::from_generators(std::move(gens), tamb);
}

}  // namespace biderive
