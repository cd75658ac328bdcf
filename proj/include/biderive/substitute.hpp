#pragma once

#include <vector>

#include "biderive/rational_function.hpp"

namespace biderive {

/// Substitute values[i] (over the target ambient) for variable i of p's
/// ambient. Powers are computed by repeated squaring per term.
inline RationalFunction substitute(const Polynomial& p,
                                   const std::vector<RationalFunction>& values,
                                   const AmbientPtr& target) {
  if (values.size() != p.ambient()->size())
    throw error("substitution must assign every ambient variable");
  RationalFunction acc = RationalFunction::zero(target);
  for (const auto& t : p.terms()) {
    RationalFunction term(Polynomial::constant(target, t.coeff));
    for (std::size_t i = 0; i < t.mon.exp.size(); ++i) {
      std::uint32_t e = t.mon.exp[i];
      if (!e) continue;
      const RationalFunction& v = values[i];
      RationalFunction pw = v.is_polynomial()
          ? RationalFunction(v.num().pow(e))
          : RationalFunction::make(v.num().pow(e), v.den().pow(e));
      term = term * pw;
    }
    acc = acc + term;
  }
  return acc;
}

inline RationalFunction substitute(const RationalFunction& f,
                                   const std::vector<RationalFunction>& values,
                                   const AmbientPtr& target) {
  RationalFunction n = substitute(f.num(), values, target);
  RationalFunction d = substitute(f.den(), values, target);
  if (d.is_zero()) throw error("denominator vanishes at the given point");
  return n / d;
}

/// Evaluate at a rational point of the same ambient.
inline Scalar evaluate_at(const Polynomial& p, const std::vector<Scalar>& point) {
  if (point.size() != p.ambient()->size())
    throw error("point must assign every ambient variable");
  Scalar acc(0);
  for (const auto& t : p.terms()) {
    Scalar term = t.coeff;
    for (std::size_t i = 0; i < t.mon.exp.size(); ++i) {
      for (std::uint32_t e = 0; e < t.mon.exp[i]; ++e) term *= point[i];
    }
    acc += term;
  }
  return acc;
}

inline Scalar evaluate_at(const RationalFunction& f,
                          const std::vector<Scalar>& point) {
  Scalar d = evaluate_at(f.den(), point);
  if (d == 0) throw error("denominator vanishes at the given point");
  return evaluate_at(f.num(), point) / d;
}

/// Rename p into a (super-)ambient by variable name; every variable of p's
/// ambient must exist in the target, optionally via the rename map.
inline Polynomial transport(const Polynomial& p, const AmbientPtr& target,
                            const std::map<std::string, std::string>& rename = {}) {
  const auto& src = *p.ambient();
  std::vector<std::optional<std::size_t>> where(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::string name = src.var(i);
    auto it = rename.find(name);
    if (it != rename.end()) name = it->second;
    where[i] = target->index(name);
  }
  Polynomial out(target);
  for (const auto& t : p.terms()) {
    Monomial m(target->size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (!t.mon.exp[i]) continue;
      if (!where[i])
        throw error("variable " + src.var(i) + " has no image in target ambient");
      m.exp[*where[i]] = t.mon.exp[i];
    }
    out = out + Polynomial::monomial_term(target, std::move(m), t.coeff);
  }
  return out;
}

inline RationalFunction transport(const RationalFunction& f, const AmbientPtr& target,
                                  const std::map<std::string, std::string>& rename = {}) {
  return RationalFunction::make(transport(f.num(), target, rename),
                                transport(f.den(), target, rename));
}

/// Restrict p to a sub-ambient containing every variable p involves.
inline Polynomial restrict_to(const Polynomial& p, const AmbientPtr& target) {
  return transport(p, target);
}

}  // namespace biderive
