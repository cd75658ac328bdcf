#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "biderive/ambient.hpp"

namespace biderive {

/// Exponent vector over a fixed ambient variable list.
struct Monomial {
  std::vector<std::uint32_t> exp;

  explicit Monomial(std::size_t nvars = 0) : exp(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exp(std::move(e)) {}

  std::size_t nvars() const { return exp.size(); }

  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (auto e : exp) d += e;
    return d;
  }

  bool is_one() const {
    for (auto e : exp)
      if (e) return false;
    return true;
  }

  bool operator==(const Monomial& o) const { return exp == o.exp; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.exp.size());
  for (std::size_t i = 0; i < a.exp.size(); ++i) r.exp[i] = a.exp[i] + b.exp[i];
  return r;
}

inline bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.exp.size(); ++i)
    if (a.exp[i] > b.exp[i]) return false;
  return true;
}

/// b / a, assuming divides(a, b).
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial r(a.exp.size());
  for (std::size_t i = 0; i < a.exp.size(); ++i) r.exp[i] = b.exp[i] - a.exp[i];
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.exp.size());
  for (std::size_t i = 0; i < a.exp.size(); ++i)
    r.exp[i] = std::max(a.exp[i], b.exp[i]);
  return r;
}

inline Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r(a.exp.size());
  for (std::size_t i = 0; i < a.exp.size(); ++i)
    r.exp[i] = std::min(a.exp[i], b.exp[i]);
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.exp.size(); ++i)
    if (a.exp[i] && b.exp[i]) return false;
  return true;
}

/// Returns <0, 0, >0 as a < b, a == b, a > b under the given order.
inline int monomial_cmp(const Monomial& a, const Monomial& b,
                        MonomialOrder order) {
  if (order == MonomialOrder::Lex) {
    for (std::size_t i = 0; i < a.exp.size(); ++i) {
      if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
    }
    return 0;
  }
  // degrevlex
  const std::uint64_t da = a.degree(), db = b.degree();
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = a.exp.size(); i-- > 0;) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace biderive
