#pragma once

#include <map>
#include <string>
#include <vector>

#include "biderive/darboux.hpp"
#include "biderive/extend.hpp"
#include "biderive/noether.hpp"

namespace biderive {

/// A morphism of presented algebras, given by images of the source
/// variables; scalars must map to themselves (the morphisms here are linear
/// over the scalar field).
struct AlgebraMorphism {
  AlgebraPtr source, target;
  std::vector<RationalFunction> images;  // per source variable
  bool verified_embedding = false;
  bool verified_bidifferential = false;

  const RationalFunction& image_of(const std::string& var) const {
    return images[source->ambient()->index_or_throw(var)];
  }

  RationalFunction push(const RationalFunction& f) const {
    return substitute(f, images, target->ambient());
  }
};

inline AlgebraMorphism identity_morphism(const AlgebraPtr& alg) {
  AlgebraMorphism m;
  m.source = m.target = alg;
  for (std::size_t i = 0; i < alg->nvars(); ++i)
    m.images.push_back(
        RationalFunction(Polynomial::variable(alg->ambient(), i)));
  m.verified_embedding = m.verified_bidifferential = true;
  return m;
}

/// Builds a morphism, checking scalars map identically, image denominators
/// are units, and source relations map into the target's relation ideal.
inline AlgebraMorphism make_morphism(
    const AlgebraPtr& source, const AlgebraPtr& target,
    const std::map<std::string, RationalFunction>& images) {
  AlgebraMorphism m;
  m.source = source;
  m.target = target;
  const AmbientPtr& samb = source->ambient();
  for (std::size_t i = 0; i < samb->size(); ++i) {
    const std::string& name = samb->var(i);
    if (source->is_scalar(i)) {
      auto idx = target->ambient()->index(name);
      if (!idx || !target->is_scalar(*idx))
        throw error("scalar " + name + " must exist in the target");
      auto it = images.find(name);
      if (it != images.end() &&
          it->second != RationalFunction(Polynomial::variable(
                            target->ambient(), *idx)))
        throw error("scalar " + name + " must map to itself");
      m.images.push_back(
          RationalFunction(Polynomial::variable(target->ambient(), *idx)));
      continue;
    }
    auto it = images.find(name);
    if (it == images.end()) throw error("no image given for " + name);
    target->require_legal(it->second);
    m.images.push_back(it->second);
  }
  for (const auto& r : source->relations()) {
    RationalFunction img = m.push(RationalFunction(r));
    if (!target->member_localized(img, IdealHandle::zero(target->ambient())))
      throw error("images do not respect the relation " + r.str());
  }
  return m;
}

/// Kernel of the morphism as an ideal of the source, by elimination: adjoin
/// renamed source variables, impose den*u' - num for each image, saturate
/// by the denominators and the target's inverted elements, eliminate the
/// target variables.
inline IdealHandle morphism_kernel(const AlgebraMorphism& phi) {
  const AmbientPtr& tamb = phi.target->ambient();
  const AmbientPtr& samb = phi.source->ambient();
  std::vector<std::string> work_vars;
  std::vector<std::string> elim_vars;
  for (const auto& v : tamb->vars()) work_vars.push_back(v);
  for (std::size_t i = 0; i < tamb->size(); ++i)
    if (!phi.target->is_scalar(i)) elim_vars.push_back(tamb->var(i));
  std::map<std::string, std::string> srename;
  for (std::size_t i = 0; i < samb->size(); ++i) {
    if (phi.source->is_scalar(i)) {
      srename[samb->var(i)] = samb->var(i);  // shared
      continue;
    }
    std::string copy = "S." + samb->var(i);
    srename[samb->var(i)] = copy;
    work_vars.push_back(copy);
  }
  AmbientPtr work = Ambient::make(work_vars);
  std::vector<Polynomial> gens;
  for (const auto& r : phi.target->relations())
    gens.push_back(transport(r, work));
  std::vector<Polynomial> saturators;
  for (const auto& f : phi.target->inverted())
    saturators.push_back(transport(f, work));
  for (std::size_t i = 0; i < samb->size(); ++i) {
    if (phi.source->is_scalar(i)) continue;
    Polynomial copy = Polynomial::variable(work, srename[samb->var(i)]);
    Polynomial num = transport(phi.images[i].num(), work);
    Polynomial den = transport(phi.images[i].den(), work);
    gens.push_back(den * copy - num);
    if (!den.is_constant()) saturators.push_back(den);
  }
  IdealHandle big = saturate_by_all(
      IdealHandle::from_generators(std::move(gens), work), saturators);
  std::vector<std::string> keep;
  for (const auto& v : work->vars())
    if (std::find(elim_vars.begin(), elim_vars.end(), v) == elim_vars.end())
      keep.push_back(v);
  IdealHandle contracted = elimination_ideal(big, keep);
  std::map<std::string, std::string> back;
  for (const auto& [orig, copy] : srename) back[copy] = orig;
  std::vector<Polynomial> out;
  for (const auto& g : contracted.basis())
    out.push_back(transport(g, samb, back));
  return IdealHandle::from_generators(std::move(out), samb);
}

/// Embedding = trivial kernel (every kernel generator already vanishes in
/// the localized source).
inline bool verify_embedding(AlgebraMorphism& phi, std::string* witness = nullptr) {
  IdealHandle K = morphism_kernel(phi);
  for (const auto& g : K.basis()) {
    if (!phi.source->saturated_relations().contains(g)) {
      if (witness) *witness = g.str();
      return false;
    }
  }
  phi.verified_embedding = true;
  return true;
}

/// phi({u,v}) = {phi u, phi v} on all generator pairs.
inline bool verify_bidifferential_morphism(AlgebraMorphism& phi,
                                           const BracketTable& BS,
                                           const BracketTable& BR,
                                           std::string* witness = nullptr) {
  const std::size_t n = phi.source->nvars();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      RationalFunction lhs = phi.push(BS.entry(a, b));
      RationalFunction rhs = BR.bracket(phi.images[a], phi.images[b]);
      if (!phi.target->equal_mod(lhs, rhs)) {
        if (witness)
          *witness = "{" + phi.source->ambient()->var(a) + "," +
                     phi.source->ambient()->var(b) + "}: " + lhs.str() +
                     " vs " + rhs.str();
        return false;
      }
    }
  phi.verified_bidifferential = true;
  return true;
}

/// Two-factor naming: left factor variables get "L.", right factor "R.",
/// scalars are shared unprefixed.
struct TensorNaming {
  AmbientPtr ambient;
  std::map<std::string, std::string> left_rename, right_rename;
  std::vector<std::string> left_vars, right_vars;  // merged names
};

inline TensorNaming make_tensor_ambient(const AlgebraPtr& R,
                                        const AlgebraPtr& S) {
  auto rs = R->scalar_vars();
  auto ss = S->scalar_vars();
  std::sort(rs.begin(), rs.end());
  std::sort(ss.begin(), ss.end());
  if (rs != ss) throw error("tensor factors must share their scalar field");

  TensorNaming tn;
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < R->nvars(); ++i) {
    const std::string& v = R->ambient()->var(i);
    if (R->is_scalar(i)) {
      tn.left_rename[v] = v;
      continue;
    }
    tn.left_rename[v] = "L." + v;
    tn.left_vars.push_back("L." + v);
    vars.push_back("L." + v);
  }
  for (std::size_t i = 0; i < R->nvars(); ++i)
    if (R->is_scalar(i)) vars.push_back(R->ambient()->var(i));
  for (std::size_t i = 0; i < S->nvars(); ++i) {
    const std::string& v = S->ambient()->var(i);
    if (S->is_scalar(i)) {
      tn.right_rename[v] = v;
      continue;
    }
    tn.right_rename[v] = "R." + v;
    tn.right_vars.push_back("R." + v);
    vars.push_back("R." + v);
  }
  tn.ambient = Ambient::make(std::move(vars), R->ambient()->order());
  return tn;
}

/// The Poisson-style product bracket on R tensor S: factor entries survive,
/// mixed entries are zero. Only available when both tables are trivial on
/// the scalars.
inline BracketTable canonical_tensor_bracket(const BracketTable& BR,
                                             const BracketTable& BS) {
  const AlgebraPtr& R = BR.algebra();
  const AlgebraPtr& S = BS.algebra();
  for (const auto* B : {&BR, &BS})
    for (std::size_t a = 0; a < B->nvars(); ++a)
      for (std::size_t b = 0; b < B->nvars(); ++b)
        if ((B->algebra()->is_scalar(a) || B->algebra()->is_scalar(b)) &&
            !B->algebra()->is_zero_mod(B->entry(a, b)))
          throw error(
              "the product bracket needs both factors trivial on scalars; "
              "offending entry {" + B->var(a) + "," + B->var(b) + "}");

  TensorNaming tn = make_tensor_ambient(R, S);
  std::vector<Polynomial> rel, inv;
  for (const auto& r : R->relations())
    rel.push_back(transport(r, tn.ambient, tn.left_rename));
  for (const auto& r : S->relations())
    rel.push_back(transport(r, tn.ambient, tn.right_rename));
  for (const auto& f : R->inverted())
    inv.push_back(transport(f, tn.ambient, tn.left_rename));
  for (const auto& f : S->inverted())
    inv.push_back(transport(f, tn.ambient, tn.right_rename));
  AlgebraOptions opts;
  opts.asserted_domain = R->asserted_domain() && S->asserted_domain();
  opts.check_scalar_free = false;
  opts.skip_inverted_validation = true;
  AlgebraPtr merged = AlgebraPresentation::make(
      tn.ambient, R->scalar_vars(), std::move(rel), std::move(inv), opts);

  const std::size_t N = merged->nvars();
  std::vector<std::vector<RationalFunction>> entries(
      N, std::vector<RationalFunction>(N, RationalFunction::zero(tn.ambient)));
  auto fill = [&](const BracketTable& B,
                  const std::map<std::string, std::string>& ren) {
    for (std::size_t a = 0; a < B.nvars(); ++a)
      for (std::size_t b = 0; b < B.nvars(); ++b) {
        if (B.entry(a, b).is_zero()) continue;
        std::size_t ma = tn.ambient->index_or_throw(
            ren.at(B.algebra()->ambient()->var(a)));
        std::size_t mb = tn.ambient->index_or_throw(
            ren.at(B.algebra()->ambient()->var(b)));
        entries[ma][mb] = transport(B.entry(a, b), tn.ambient, ren);
      }
  };
  fill(BR, tn.left_rename);
  fill(BS, tn.right_rename);
  return BracketTable::make(merged, std::move(entries));
}

enum class CheckStatus { Pass, Fail, Partial, Structural };

struct TensorCheck {
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct TensorReport {
  std::vector<TensorCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail) return false;
    return true;
  }
};

/// The output of the tensor construction.
struct TensorExtension {
  BracketTable table;
  AlgebraMorphism iota;
  NoetherData noether;
  Polynomial f;          // product of the derivative evaluations, merged copy
  IdealHandle diagonal;  // generated by iota(s) (x) 1 - 1 (x) s
  TensorNaming naming;
  TensorReport report;
};

/// Bidifferential ideal pair in a two-factor table: the extension of each
/// part must absorb brackets with every variable in both slots. In the
/// one-sorted realization this is exactly the bidifferential-ideal check on
/// each extension separately.
inline bool is_bidifferential_pair(const BracketTable& B,
                                   const IdealHandle& left_ext,
                                   const IdealHandle& right_ext,
                                   std::string* witness = nullptr) {
  return is_bidifferential_ideal(B, left_ext, witness) &&
         is_bidifferential_ideal(B, right_ext, witness);
}

namespace detail {

/// p lies in the subalgebra generated by gens (modulo the relations)?
/// Standard elimination test: reduce against w_i - gen_i with the ambient
/// variables dominant; membership iff the normal form uses only the w's.
inline bool subalgebra_member(const Polynomial& p,
                              const std::vector<Polynomial>& gens,
                              const AlgebraPtr& alg) {
  const AmbientPtr& amb = alg->ambient();
  std::vector<std::string> work_vars = amb->vars();
  std::vector<std::string> wnames;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string w = fresh_var_name(amb, "w" + std::to_string(i));
    wnames.push_back(w);
    work_vars.push_back(w);
  }
  AmbientPtr work = Ambient::make(work_vars, MonomialOrder::Lex);
  std::vector<Polynomial> idegens;
  for (const auto& r : alg->saturated_relations().basis())
    idegens.push_back(transport(r, work));
  for (std::size_t i = 0; i < gens.size(); ++i)
    idegens.push_back(Polynomial::variable(work, wnames[i]) -
                      transport(gens[i], work));
  auto basis = reduced_groebner_basis(std::move(idegens), work);
  Polynomial nf = normal_form(transport(p, work), basis);
  for (std::size_t v = 0; v < amb->size(); ++v)
    if (nf.involves(v)) return false;
  return true;
}

}  // namespace detail

/// d(s) = iota(s) (x) 1 - 1 (x) s as an element of the merged algebra, for
/// any element s of S (denominator-cleared on the left image).
inline RationalFunction graph_difference(const TensorExtension& T,
                                         const RationalFunction& s) {
  const AmbientPtr& mamb = T.naming.ambient;
  std::vector<RationalFunction> imgs;
  const AmbientPtr& samb = T.iota.source->ambient();
  for (std::size_t i = 0; i < samb->size(); ++i)
    imgs.push_back(transport(T.iota.images[i], mamb, T.naming.left_rename));
  RationalFunction left = substitute(s, imgs, mamb);
  RationalFunction right = transport(s, mamb, T.naming.right_rename);
  return left - right;
}

/// The certified checks of the tensor construction, run on the finished
/// object: factor restrictions, the bidifferential graph ideal, subring
/// closure, and lifting pushforwards for the supplied witnesses. Results
/// marked Structural hold by construction; witness checks are genuinely
/// recomputed.
inline TensorReport verify_tensor_properties(
    const TensorExtension& T, const BracketTable& BR, const BracketTable& BS,
    const std::vector<IdealHandle>& lifting_witnesses, std::uint64_t seed) {
  TensorReport rep;
  const BracketTable& B = T.table;
  const AlgebraPtr& M = B.algebra();
  const AmbientPtr& mamb = T.naming.ambient;

  // (a) lifting over the left factor: structural for the localisation and
  // algebraic stages; witness-checked on the supplied bidifferential ideals.
  rep.checks.push_back(
      {"lifting-left-structural", CheckStatus::Structural,
       "transcendental stage preserves ideal pairs; algebraic and "
       "localisation stages are lifting by construction"});
  for (std::size_t w = 0; w < lifting_witnesses.size(); ++w) {
    const IdealHandle& I = lifting_witnesses[w];
    std::string wit;
    if (!is_bidifferential_ideal(BR, I, &wit)) {
      rep.checks.push_back({"lifting-left-witness-" + std::to_string(w),
                            CheckStatus::Partial,
                            "witness ideal is not bidifferential in the left "
                            "factor; skipped"});
      continue;
    }
    std::vector<Polynomial> ext;
    for (const auto& g : I.generators())
      ext.push_back(transport(g, mamb, T.naming.left_rename));
    bool ok = is_bidifferential_ideal(
        B, IdealHandle::from_generators(std::move(ext), mamb), &wit);
    rep.checks.push_back({"lifting-left-witness-" + std::to_string(w),
                          ok ? CheckStatus::Pass : CheckStatus::Fail,
                          ok ? "pushforward stays bidifferential"
                             : "pushforward fails; witness " + wit});
  }

  // (b) restriction to each factor reproduces its table.
  auto restriction_check = [&](const BracketTable& BF,
                               const std::map<std::string, std::string>& ren,
                               const std::string& name) {
    for (std::size_t a = 0; a < BF.nvars(); ++a)
      for (std::size_t b = 0; b < BF.nvars(); ++b) {
        std::size_t ma =
            mamb->index_or_throw(ren.at(BF.algebra()->ambient()->var(a)));
        std::size_t mb =
            mamb->index_or_throw(ren.at(BF.algebra()->ambient()->var(b)));
        RationalFunction expect = transport(BF.entry(a, b), mamb, ren);
        if (!M->equal_mod(B.entry(ma, mb), expect)) {
          rep.checks.push_back(
              {name, CheckStatus::Fail,
               "entry {" + B.var(ma) + "," + B.var(mb) + "} = " +
                   B.entry(ma, mb).str() + " differs from the factor value " +
                   expect.str()});
          return;
        }
      }
    rep.checks.push_back({name, CheckStatus::Pass, "entry-wise equal"});
  };
  restriction_check(BR, T.naming.left_rename, "restrict-left");
  restriction_check(BS, T.naming.right_rename, "restrict-right");

  // (c) the subring generated by iota(S) and the right copy is closed under
  // the bracket (membership after clearing small powers of f).
  {
    std::vector<Polynomial> sub_gens;
    bool rational_images = false;
    const AmbientPtr& samb = T.iota.source->ambient();
    for (std::size_t i = 0; i < samb->size(); ++i) {
      if (T.iota.source->is_scalar(i)) continue;
      RationalFunction img =
          transport(T.iota.images[i], mamb, T.naming.left_rename);
      if (!img.is_polynomial()) {
        rational_images = true;
        break;
      }
      sub_gens.push_back(img.num());
      sub_gens.push_back(Polynomial::variable(
          mamb, T.naming.right_rename.at(samb->var(i))));
    }
    if (rational_images) {
      rep.checks.push_back({"subring-closed", CheckStatus::Partial,
                            "rational images; closure not tested"});
    } else {
      Polynomial fM = T.f;
      sub_gens.push_back(fM);
      bool ok = true;
      std::string detail = "brackets of subring generators stay inside";
      for (std::size_t i = 0; i < sub_gens.size() && ok; ++i)
        for (std::size_t j = 0; j < sub_gens.size() && ok; ++j) {
          RationalFunction v =
              B.bracket(RationalFunction(sub_gens[i]), RationalFunction(sub_gens[j]));
          bool member = false;
          RationalFunction cleared = v;
          for (int pw = 0; pw <= 3 && !member; ++pw) {
            if (cleared.is_polynomial() &&
                detail::subalgebra_member(cleared.num(), sub_gens, M))
              member = true;
            cleared = cleared * RationalFunction(fM);
          }
          if (!member) {
            ok = false;
            detail = "bracket {" + sub_gens[i].str() + "," + sub_gens[j].str() +
                     "} = " + v.str() + " not seen inside the subring";
          }
        }
      rep.checks.push_back({"subring-closed",
                            ok ? CheckStatus::Pass : CheckStatus::Fail, detail});
    }
  }

  // (d) the graph ideal is bidifferential.
  {
    std::string wit;
    bool ok = is_bidifferential_ideal(B, T.diagonal, &wit);
    rep.checks.push_back({"graph-ideal-bidifferential",
                          ok ? CheckStatus::Pass : CheckStatus::Fail,
                          ok ? "all generator brackets reduce into the ideal"
                             : "witness " + wit});
  }

  // Sanity property: d(P(s)) - (1 (x) dP/dt(s)) d(s) - P^d(iota s (x) 1)
  // lies in the graph ideal, for randomized small P and s.
  {
    std::mt19937_64 rng(seed);
    const AmbientPtr& samb = T.iota.source->ambient();
    std::vector<std::size_t> svars;
    for (std::size_t i = 0; i < samb->size(); ++i)
      if (!T.iota.source->is_scalar(i)) svars.push_back(i);
    bool ok = true;
    std::string detail = "derivative-like identity holds on random samples";
    IdealHandle diag_eff = M->effective_ideal(T.diagonal);
    for (int trial = 0; trial < 4 && ok && !svars.empty(); ++trial) {
      std::size_t si = svars[rng() % svars.size()];
      RationalFunction s(Polynomial::variable(samb, si));
      // P(t) = c2 t^2 + c1 s' t + c0 over S, with s' another generator
      std::size_t sj = svars[rng() % svars.size()];
      Polynomial sp = Polynomial::variable(samb, sj);
      long c2 = static_cast<long>(rng() % 3) + 1;
      long c1 = static_cast<long>(rng() % 5) - 2;
      long c0 = static_cast<long>(rng() % 5) - 2;
      std::vector<Polynomial> coeffs = {
          Polynomial::constant(samb, Scalar(c0)),
          sp.scaled(Scalar(c1)),
          Polynomial::constant(samb, Scalar(c2))};
      // d applied to coefficients, evaluated at iota(s) (x) 1
      RationalFunction iota_s_left = transport(
          T.iota.images[si], mamb, T.naming.left_rename);
      RationalFunction Pd = RationalFunction::zero(mamb);
      RationalFunction pw = RationalFunction::one(mamb);
      for (const auto& c : coeffs) {
        Pd = Pd + graph_difference(T, RationalFunction(c)) * pw;
        pw = pw * iota_s_left;
      }
      // P(s), dP/dt(s) inside S
      RationalFunction Ps = RationalFunction::zero(samb);
      RationalFunction dPs = RationalFunction::zero(samb);
      RationalFunction spow = RationalFunction::one(samb);
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        Ps = Ps + RationalFunction(coeffs[j]) * spow;
        if (j + 1 < coeffs.size()) {
          RationalFunction jp1(Polynomial::constant(
              samb, Scalar(static_cast<long>(j) + 1)));
          dPs = dPs + jp1 * RationalFunction(coeffs[j + 1]) * spow;
        }
        spow = spow * s;
      }
      RationalFunction lhs = graph_difference(T, Ps) -
                             transport(dPs, mamb, T.naming.right_rename) *
                                 graph_difference(T, s) -
                             Pd;
      if (!M->member_in_effective(M->reduce(lhs), diag_eff)) {
        ok = false;
        detail = "identity fails for sample " + Ps.str();
      }
    }
    rep.checks.push_back({"derivative-like-identity",
                          ok ? CheckStatus::Pass : CheckStatus::Fail, detail});
  }
  return rep;
}

/// The tensor construction: a biderivation on R (x) S_f extending both
/// factors, built so that mixed brackets against the right copies of the
/// independent generators are the iota-brackets taken in R, and the
/// algebraic generators are adjoined by implicit differentiation. The graph
/// ideal of iota comes out bidifferential; the report certifies the
/// properties on the finished object.
inline TensorExtension theorem_tensor(const BracketTable& BR,
                                      const BracketTable& BS,
                                      AlgebraMorphism iota,
                                      const NoetherData& noether,
                                      std::vector<IdealHandle> lifting_witnesses = {},
                                      std::uint64_t seed = 0xb1d5) {
  const AlgebraPtr& R = BR.algebra();
  const AlgebraPtr& S = BS.algebra();
  if (iota.source.get() != S.get() || iota.target.get() != R.get())
    throw error("iota must map the right factor into the left factor");
  std::string wit;
  if (!iota.verified_embedding && !verify_embedding(iota, &wit))
    throw error("iota is not an embedding (not dominant); kernel witness " + wit);
  if (!iota.verified_bidifferential &&
      !verify_bidifferential_morphism(iota, BS, BR, &wit))
    throw error("iota is not bidifferential: " + wit);
  {
    auto bad = verify_noether(noether, S);
    if (!bad.empty()) throw error("noether data rejected: " + bad[0]);
  }

  TensorNaming tn = make_tensor_ambient(R, S);
  const AmbientPtr& mamb = tn.ambient;

  // Relations: the left factor's, plus one minimal polynomial per algebraic
  // right generator (the right factor's other relations become consequences
  // after the derivative localisations). Inverted: both factors' lists plus
  // the leading coefficients and derivative values collected below.
  std::vector<Polynomial> rel, inv;
  for (const auto& r : R->relations())
    rel.push_back(transport(r, mamb, tn.left_rename));
  for (const auto& f : R->inverted())
    inv.push_back(transport(f, mamb, tn.left_rename));
  for (const auto& f : S->inverted())
    inv.push_back(transport(f, mamb, tn.right_rename));

  Polynomial f_merged = Polynomial::one(mamb);
  std::vector<Polynomial> minpoly_merged;  // P_i over the merged ambient, at b_i
  for (std::size_t i = 0; i < noether.b_list.size(); ++i) {
    std::map<std::string, std::string> ren = tn.right_rename;
    ren[noether.tvar] = tn.right_rename.at(noether.b_list[i]);
    Polynomial Pb = transport(noether.minpolys[i], mamb, ren);
    rel.push_back(Pb);
    minpoly_merged.push_back(Pb);
    std::size_t b_idx = mamb->index_or_throw(tn.right_rename.at(noether.b_list[i]));
    Polynomial df = Pb.derivative(b_idx);
    inv.push_back(df);
    f_merged = f_merged * df;
    // leading-coefficient localisation, matching the algebraic adjunction
    const AmbientPtr& pamb = noether.minpolys[i].ambient();
    auto coeffs = coefficients_in(noether.minpolys[i],
                                  pamb->index_or_throw(noether.tvar));
    Polynomial lead = transport(coeffs.back(), mamb, tn.right_rename);
    if (!lead.is_constant()) inv.push_back(lead);
  }

  AlgebraOptions opts;
  opts.asserted_domain = R->asserted_domain() && S->asserted_domain();
  opts.check_scalar_free = false;
  opts.skip_inverted_validation = true;
  AlgebraPtr M = AlgebraPresentation::make(mamb, R->scalar_vars(),
                                           std::move(rel), std::move(inv), opts);

  const std::size_t N = M->nvars();
  std::vector<std::vector<RationalFunction>> e(
      N, std::vector<RationalFunction>(N, RationalFunction::zero(mamb)));
  auto midx = [&](const std::string& v) { return mamb->index_or_throw(v); };
  auto to_merged_L = [&](const RationalFunction& v) {
    return transport(v, mamb, tn.left_rename);
  };
  auto to_merged_R = [&](const RationalFunction& v) {
    return transport(v, mamb, tn.right_rename);
  };

  // Left block (includes the scalars' brackets, shared by both factors).
  for (std::size_t a = 0; a < R->nvars(); ++a)
    for (std::size_t b = 0; b < R->nvars(); ++b) {
      std::size_t ma = midx(tn.left_rename.at(R->ambient()->var(a)));
      std::size_t mb = midx(tn.left_rename.at(R->ambient()->var(b)));
      e[ma][mb] = to_merged_L(BR.entry(a, b));
    }

  // Independent right generators: mixed entries are the iota-brackets taken
  // in R; right-right entries restate the S table.
  for (const auto& yname : noether.y_list) {
    std::size_t sy = S->ambient()->index_or_throw(yname);
    std::size_t my = midx(tn.right_rename.at(yname));
    RationalFunction iota_y = iota.images[sy];
    for (std::size_t a = 0; a < R->nvars(); ++a) {
      std::size_t ma = midx(tn.left_rename.at(R->ambient()->var(a)));
      RationalFunction za(Polynomial::variable(R->ambient(), a));
      e[ma][my] = to_merged_L(BR.bracket(za, iota_y));
      e[my][ma] = to_merged_L(BR.bracket(iota_y, za));
    }
    for (const auto& y2 : noether.y_list) {
      std::size_t sy2 = S->ambient()->index_or_throw(y2);
      std::size_t my2 = midx(tn.right_rename.at(y2));
      e[my][my2] = to_merged_R(BS.entry(sy, sy2));
      e[my2][my] = to_merged_R(BS.entry(sy2, sy));
    }
  }

  // Algebraic right generators, in order; every entry involving b_i is
  // forced by implicit differentiation against P_i. "Active" variables are
  // those whose mutual brackets are already in place.
  std::vector<std::size_t> active;
  for (std::size_t a = 0; a < R->nvars(); ++a)
    active.push_back(midx(tn.left_rename.at(R->ambient()->var(a))));
  for (const auto& yname : noether.y_list)
    active.push_back(midx(tn.right_rename.at(yname)));

  for (std::size_t i = 0; i < noether.b_list.size(); ++i) {
    std::size_t mb = midx(tn.right_rename.at(noether.b_list[i]));
    RationalFunction b(Polynomial::variable(mamb, mb));
    Polynomial fP = minpoly_merged[i].derivative(mb);
    RationalFunction rf_f(fP);
    const AmbientPtr& pamb = noether.minpolys[i].ambient();
    auto coeff_list = coefficients_in(noether.minpolys[i],
                                      pamb->index_or_throw(noether.tvar));
    std::vector<RationalFunction> coeffs;
    for (const auto& c : coeff_list)
      coeffs.push_back(to_merged_R(RationalFunction(c)));

    auto forced = [&](const std::vector<RationalFunction>& der_values) {
      DerivationSpec d;
      d.algebra = M;
      d.values = der_values;
      RationalFunction pd = detail::coefficient_derivative_at(coeffs, d, b);
      return -(pd / rf_f);
    };

    for (std::size_t z : active) {
      std::vector<RationalFunction> left_vals(N, RationalFunction::zero(mamb));
      std::vector<RationalFunction> right_vals(N, RationalFunction::zero(mamb));
      for (std::size_t k : active) {
        left_vals[k] = e[z][k];
        right_vals[k] = e[k][z];
      }
      e[z][mb] = forced(left_vals);   // {z, b}
      e[mb][z] = forced(right_vals);  // {b, z}
    }
    {
      std::vector<RationalFunction> bleft(N, RationalFunction::zero(mamb));
      for (std::size_t k : active) bleft[k] = e[mb][k];
      e[mb][mb] = forced(bleft);  // {b, b}, second stage
    }
    active.push_back(mb);
  }

  TensorExtension T{BracketTable::make(M, std::move(e)),
                    std::move(iota),
                    noether,
                    f_merged,
                    IdealHandle::zero(mamb),
                    tn,
                    {}};

  // Graph ideal: iota(s) (x) 1 - 1 (x) s over the right generators
  // (denominator-cleared when iota has rational images).
  std::vector<Polynomial> dgens;
  const AmbientPtr& samb = S->ambient();
  for (std::size_t i = 0; i < samb->size(); ++i) {
    if (S->is_scalar(i)) continue;
    RationalFunction img = transport(T.iota.images[i], mamb, tn.left_rename);
    Polynomial rcopy = Polynomial::variable(mamb, tn.right_rename.at(samb->var(i)));
    dgens.push_back(img.num() - img.den() * rcopy);
  }
  T.diagonal = IdealHandle::from_generators(std::move(dgens), mamb);

  if (lifting_witnesses.empty()) {
    // cheap default witnesses: principal bidifferential ideals of R
    DarbouxSearchResult ds = darboux_principal_search(BR, 1);
    for (const auto& p : ds.polys)
      lifting_witnesses.push_back(
          IdealHandle::from_generators({p}, R->ambient()));
  }
  T.report = verify_tensor_properties(T, BR, BS, lifting_witnesses, seed);
  return T;
}

}  // namespace biderive
