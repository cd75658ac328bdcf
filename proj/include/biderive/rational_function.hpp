#pragma once

#include <string>
#include <utility>

#include "biderive/polynomial.hpp"

namespace biderive {

// Multivariate division by a single divisor; returns {quotient, remainder}.
// Exactness (remainder zero) is order-independent, which is all callers rely
// on for cancellation.
inline std::pair<Polynomial, Polynomial> divide_single(const Polynomial& f,
                                                       const Polynomial& g) {
  if (g.is_zero()) throw error("division by zero polynomial");
  Polynomial q = Polynomial::zero(f.ambient());
  Polynomial r = Polynomial::zero(f.ambient());
  Polynomial h = f;
  const Monomial& lg = g.leading_monomial();
  while (!h.is_zero()) {
    const Monomial& lh = h.leading_monomial();
    if (divides(lg, lh)) {
      Scalar c = h.leading_coeff() / g.leading_coeff();
      Monomial m = quotient(lh, lg);
      q = q + Polynomial::monomial_term(f.ambient(), m, c);
      h = h - g.times_term(c, m);
    } else {
      Polynomial lt = Polynomial::monomial_term(f.ambient(), lh, h.leading_coeff());
      r = r + lt;
      h = h - lt;
    }
  }
  return {q, r};
}

/// Quotient of two polynomials in canonical form: nonzero denominator with
/// leading coefficient 1, common monomial factors cancelled, and the quotient
/// collapsed to a polynomial whenever the division happens to be exact.
/// Equality of fractions is decided by cross-multiplication, so no full
/// multivariate gcd is attempted.
class RationalFunction {
 public:
  RationalFunction() = default;

  RationalFunction(Polynomial p)  // NOLINT: implicit by design
      : num_(std::move(p)), den_(Polynomial::one(num_.ambient())) {}

  static RationalFunction make(Polynomial num, Polynomial den) {
    require_same_ambient(num.ambient(), den.ambient());
    if (den.is_zero()) throw error("zero denominator");
    RationalFunction r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.canonicalize();
    return r;
  }

  static RationalFunction zero(const AmbientPtr& amb) {
    return RationalFunction(Polynomial::zero(amb));
  }

  static RationalFunction one(const AmbientPtr& amb) {
    return RationalFunction(Polynomial::one(amb));
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const AmbientPtr& ambient() const { return num_.ambient(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  const Polynomial& as_polynomial() const {
    if (!is_polynomial()) throw error("element is not polynomial: " + str());
    return num_;
  }

  RationalFunction operator-() const {
    RationalFunction r(*this);
    r.num_ = -r.num_;
    return r;
  }

  RationalFunction operator+(const RationalFunction& o) const {
    if (den_ == o.den_)
      return make(num_ + o.num_, den_);
    return make(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }

  RationalFunction operator-(const RationalFunction& o) const {
    return *this + (-o);
  }

  RationalFunction operator*(const RationalFunction& o) const {
    return make(num_ * o.num_, den_ * o.den_);
  }

  RationalFunction operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw error("division by zero");
    return make(num_ * o.den_, den_ * o.num_);
  }

  bool operator==(const RationalFunction& o) const {
    // a/b = c/d iff ad - bc = 0; canonical forms make the fast path common.
    if (num_ == o.num_ && den_ == o.den_) return true;
    return (num_ * o.den_ - o.num_ * den_).is_zero();
  }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  /// Formal partial derivative via the quotient rule.
  RationalFunction derivative(std::size_t var) const {
    if (is_polynomial()) return RationalFunction(num_.derivative(var));
    Polynomial n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return make(std::move(n), den_ * den_);
  }

  std::string str() const {
    if (is_polynomial() && den_.constant_value() == 1) return num_.str();
    std::string n = num_.terms().size() > 1 ? "(" + num_.str() + ")" : num_.str();
    return n + "/(" + den_.str() + ")";
  }

 private:
  void canonicalize() {
    if (num_.is_zero()) {
      den_ = Polynomial::one(num_.ambient());
      return;
    }
    Monomial g = gcd(num_.monomial_content(), den_.monomial_content());
    if (!g.is_one()) {
      num_ = num_.divide_monomial(g);
      den_ = den_.divide_monomial(g);
    }
    if (den_.is_constant()) {
      num_ = num_.scaled(1 / den_.constant_value());
      den_ = Polynomial::one(num_.ambient());
      return;
    }
    auto [q, r] = divide_single(num_, den_);
    if (r.is_zero()) {
      num_ = std::move(q);
      den_ = Polynomial::one(num_.ambient());
      return;
    }
    Scalar lc = den_.leading_coeff();
    if (lc != 1) {
      Scalar inv = 1 / lc;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  Polynomial num_, den_;
};

}  // namespace biderive
