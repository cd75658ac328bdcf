#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "biderive/monomial.hpp"

namespace biderive {

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept sorted descending under the ambient monomial order, with
/// no zero coefficients; the zero polynomial has an empty term list.
class Polynomial {
 public:
  struct Term {
    Monomial mon;
    Scalar coeff;
  };

  Polynomial() = default;
  explicit Polynomial(AmbientPtr amb) : amb_(std::move(amb)) {}

  static Polynomial zero(AmbientPtr amb) { return Polynomial(std::move(amb)); }

  static Polynomial constant(AmbientPtr amb, Scalar c) {
    c.canonicalize();  // tolerate mpq_class(a, b) inputs
    Polynomial p(std::move(amb));
    if (c != 0) p.terms_.push_back({Monomial(p.amb_->size()), std::move(c)});
    return p;
  }

  static Polynomial one(AmbientPtr amb) {
    return constant(std::move(amb), Scalar(1));
  }

  static Polynomial variable(AmbientPtr amb, std::size_t idx) {
    Polynomial p(amb);
    Monomial m(amb->size());
    m.exp[idx] = 1;
    p.terms_.push_back({std::move(m), Scalar(1)});
    return p;
  }

  static Polynomial variable(const AmbientPtr& amb, std::string_view name) {
    return variable(amb, amb->index_or_throw(name));
  }

  static Polynomial monomial_term(AmbientPtr amb, Monomial m, Scalar c) {
    c.canonicalize();
    Polynomial p(std::move(amb));
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }

  const AmbientPtr& ambient() const { return amb_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mon.is_one());
  }

  Scalar constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (!is_constant()) throw error("polynomial is not constant");
    return terms_[0].coeff;
  }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw error("zero polynomial has no leading term");
    return terms_[0].mon;
  }

  const Scalar& leading_coeff() const {
    if (terms_.empty()) throw error("zero polynomial has no leading term");
    return terms_[0].coeff;
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mon.degree());
    return d;
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mon.exp[var]);
    return d;
  }

  bool involves(std::size_t var) const {
    for (const auto& t : terms_)
      if (t.mon.exp[var]) return true;
    return false;
  }

  Scalar coeff_of(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mon == m) return t.coeff;
    return Scalar(0);
  }

  bool operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].mon != o.terms_[i].mon ||
          terms_[i].coeff != o.terms_[i].coeff)
        return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Polynomial operator+(const Polynomial& o) const {
    require_same_ambient(amb_, o.amb_);
    Polynomial r(amb_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    const auto ord = amb_->order();
    while (i < terms_.size() && j < o.terms_.size()) {
      int c = monomial_cmp(terms_[i].mon, o.terms_[j].mon, ord);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(o.terms_[j++]);
      } else {
        Scalar s = terms_[i].coeff + o.terms_[j].coeff;
        if (s != 0) r.terms_.push_back({terms_[i].mon, std::move(s)});
        ++i;
        ++j;
      }
    }
    while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
    while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    require_same_ambient(amb_, o.amb_);
    if (is_zero() || o.is_zero()) return zero(amb_);
    const auto ord = amb_->order();
    auto cmp = [ord](const Monomial& a, const Monomial& b) {
      return monomial_cmp(a, b, ord) > 0;  // descending
    };
    std::map<Monomial, Scalar, decltype(cmp)> acc(cmp);
    for (const auto& ta : terms_)
      for (const auto& tb : o.terms_) {
        Monomial m = ta.mon * tb.mon;
        Scalar c = ta.coeff * tb.coeff;
        auto [it, fresh] = acc.emplace(std::move(m), c);
        if (!fresh) it->second += c;
      }
    Polynomial r(amb_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back({m, std::move(c)});
    return r;
  }

  Polynomial scaled(const Scalar& c) const {
    if (c == 0) return zero(amb_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// this * c * m, a single-term multiply used heavily by division.
  Polynomial times_term(const Scalar& c, const Monomial& m) const {
    if (c == 0) return zero(amb_);
    Polynomial r(amb_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mon * m, t.coeff * c});
    return r;
  }

  Polynomial pow(std::uint32_t e) const {
    Polynomial r = one(amb_);
    Polynomial b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  Polynomial derivative(std::size_t var) const {
    Polynomial r(amb_);
    for (const auto& t : terms_) {
      if (t.mon.exp[var] == 0) continue;
      Monomial m = t.mon;
      Scalar c = t.coeff * Scalar(static_cast<long>(m.exp[var]));
      m.exp[var] -= 1;
      r.terms_.push_back({std::move(m), std::move(c)});
    }
    // differentiation preserves descending order within surviving terms for
    // lex; not for degrevlex, so re-sort.
    r.sort_terms();
    return r;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    Scalar inv = 1 / leading_coeff();
    return scaled(inv);
  }

  /// Common monomial factor of all terms (exponent-wise minimum).
  Monomial monomial_content() const {
    if (terms_.empty()) return Monomial(amb_->size());
    Monomial g = terms_[0].mon;
    for (std::size_t i = 1; i < terms_.size(); ++i) g = gcd(g, terms_[i].mon);
    return g;
  }

  /// Divide every term by m; requires m to divide each monomial.
  Polynomial divide_monomial(const Monomial& m) const {
    Polynomial r(amb_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({quotient(t.mon, m), t.coeff});
    return r;
  }

  /// Total-order comparison used for deterministic container layouts.
  int cmp(const Polynomial& o) const {
    const auto ord = amb_->order();
    std::size_t n = std::min(terms_.size(), o.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      int c = monomial_cmp(terms_[i].mon, o.terms_[i].mon, ord);
      if (c != 0) return c;
      int s = ::cmp(terms_[i].coeff, o.terms_[i].coeff);
      if (s != 0) return s;
    }
    if (terms_.size() != o.terms_.size())
      return terms_.size() < o.terms_.size() ? -1 : 1;
    return 0;
  }

  std::string str() const;

 private:
  void sort_terms() {
    const auto ord = amb_->order();
    std::sort(terms_.begin(), terms_.end(),
              [ord](const Term& a, const Term& b) {
                return monomial_cmp(a.mon, b.mon, ord) > 0;
              });
  }

  AmbientPtr amb_;
  std::vector<Term> terms_;
};

inline Polynomial operator*(const Scalar& c, const Polynomial& p) {
  return p.scaled(c);
}

inline std::string format_monomial(const Ambient& amb, const Monomial& m) {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < m.exp.size(); ++i) {
    if (!m.exp[i]) continue;
    if (!first) out += "*";
    out += amb.var(i);
    if (m.exp[i] > 1) out += "^" + std::to_string(m.exp[i]);
    first = false;
  }
  return out;
}

inline std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    Scalar c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    std::string mono = format_monomial(*amb_, t.mon);
    if (mono.empty()) {
      out += scalar_str(c);
    } else {
      if (c != 1) out += scalar_str(c) + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace biderive
