#include "doctest.h"

#include <random>

#include "biderive/parser.hpp"
#include "biderive/substitute.hpp"

using namespace biderive;

namespace {

AmbientPtr xy() { return Ambient::make({"x", "y"}); }

RationalFunction rf(const std::string& s, const AmbientPtr& a) {
  return parse_element(s, a);
}

Polynomial pp(const std::string& s, const AmbientPtr& a) {
  return parse_polynomial(s, a);
}

// Deterministic random polynomials for the property checks.
struct PolyGen {
  std::mt19937_64 rng;
  explicit PolyGen(std::uint64_t seed) : rng(seed) {}

  Scalar coeff() {
    long n = static_cast<long>(rng() % 11) - 5;
    long d = static_cast<long>(rng() % 3) + 1;
    return Scalar(n, d);
  }

  Polynomial poly(const AmbientPtr& amb, std::uint32_t maxdeg, int terms) {
    Polynomial p = Polynomial::zero(amb);
    for (int t = 0; t < terms; ++t) {
      Monomial m(amb->size());
      std::uint32_t budget = maxdeg;
      for (std::size_t i = 0; i < amb->size(); ++i) {
        std::uint32_t e = static_cast<std::uint32_t>(rng() % (budget + 1));
        m.exp[i] = e;
        budget -= e;
      }
      p = p + Polynomial::monomial_term(amb, std::move(m), coeff());
    }
    return p;
  }
};

}  // namespace

TEST_CASE("parse examples") {
  auto a = xy();
  Polynomial p = pp("3/2*x^2*y - 1", a);
  CHECK(p.terms().size() == 2);
  CHECK(p.coeff_of(Monomial({2, 1})) == Scalar(3, 2));
  CHECK(p.coeff_of(Monomial({0, 0})) == Scalar(-1));

  CHECK(pp("0", a).is_zero());
  CHECK(pp("0", a).terms().empty());

  RationalFunction f = rf("x/(y-1)", a);
  CHECK(f.num() == pp("x", a));
  CHECK(f.den() == pp("y-1", a));
}

TEST_CASE("parse errors carry position") {
  auto a = xy();
  CHECK_THROWS_AS(parse_element("x + qq", a), parse_error);
  CHECK_THROWS_AS(parse_element("x + ", a), parse_error);
  CHECK_THROWS_AS(parse_element("(x", a), parse_error);
  CHECK_THROWS_AS(parse_element("x 2", a), parse_error);
}

TEST_CASE("ring arithmetic examples") {
  auto a = xy();
  CHECK(rf("x+1", a) * rf("x-1", a) == rf("x^2-1", a));
  CHECK(rf("1/x", a) + rf("1/y", a) == rf("(y+x)/(x*y)", a));
  PolyGen gen(7);
  for (int i = 0; i < 10; ++i) {
    Polynomial p = gen.poly(a, 3, 4);
    CHECK((RationalFunction(p) - RationalFunction(p)).is_zero());
  }
  CHECK_THROWS_AS(rf("x", a) + rf("u", Ambient::make({"u"})), error);
}

TEST_CASE("partial derivative examples") {
  auto a = xy();
  CHECK(rf("x^2*y", a).derivative(0) == rf("2*x*y", a));
  CHECK(rf("1/x", a).derivative(0) == rf("-1/(x^2)", a));
  CHECK(rf("y^3", a).derivative(0).is_zero());
}

TEST_CASE("evaluate examples") {
  auto a = xy();
  CHECK(evaluate_at(pp("x^2-1", a), {Scalar(1), Scalar(0)}) == 0);
  CHECK(evaluate_at(rf("x/(y-1)", a), {Scalar(2), Scalar(3)}) == Scalar(1));
  CHECK_THROWS_AS(evaluate_at(rf("x/(y-1)", a), {Scalar(2), Scalar(1)}), error);
}

TEST_CASE("substitution into another ambient") {
  auto a = xy();
  auto b = Ambient::make({"u"});
  std::vector<RationalFunction> vals = {rf("u", b), rf("u^2", b)};
  CHECK(substitute(pp("x*y - y", a), vals, b) == rf("u^3 - u^2", b));
}

TEST_CASE("ring axioms on randomized triples") {
  auto a = xy();
  PolyGen gen(42);
  for (int i = 0; i < 25; ++i) {
    Polynomial p = gen.poly(a, 3, 3);
    Polynomial q = gen.poly(a, 3, 3);
    Polynomial r = gen.poly(a, 3, 3);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
  }
}

TEST_CASE("derivative additivity and Leibniz") {
  auto a = xy();
  PolyGen gen(43);
  for (int i = 0; i < 25; ++i) {
    Polynomial p = gen.poly(a, 3, 3);
    Polynomial q = gen.poly(a, 3, 3);
    for (std::size_t v = 0; v < 2; ++v) {
      CHECK((p + q).derivative(v) == p.derivative(v) + q.derivative(v));
      CHECK((p * q).derivative(v) ==
            p * q.derivative(v) + q * p.derivative(v));
    }
  }
}

TEST_CASE("parse o format is the identity on canonical forms") {
  auto a = xy();
  PolyGen gen(44);
  for (int i = 0; i < 25; ++i) {
    Polynomial p = gen.poly(a, 4, 4);
    Polynomial q = gen.poly(a, 2, 2);
    if (q.is_zero()) q = Polynomial::one(a);
    RationalFunction f = RationalFunction::make(p, q);
    RationalFunction again = parse_element(format_element(f), a);
    CHECK(again.num() == f.num());
    CHECK(again.den() == f.den());
  }
}

TEST_CASE("fraction equality is cross-multiplication") {
  auto a = xy();
  // x/y == x*(x+1) / (y*(x+1)) even though no gcd is computed.
  RationalFunction l = rf("x/(y)", a);
  RationalFunction r = RationalFunction::make(pp("x^2+x", a), pp("x*y+y", a));
  CHECK(l == r);
  CHECK(l != rf("x/(y-1)", a));
}

TEST_CASE("canonical form invariants") {
  auto a = xy();
  RationalFunction f = RationalFunction::make(pp("2*x", a), pp("2*y", a));
  CHECK(f.num() == pp("x", a));
  CHECK(f.den() == pp("y", a));
  CHECK(f.den().leading_coeff() == 1);
  // exact division collapses to a polynomial
  RationalFunction g = RationalFunction::make(pp("x^2-1", a), pp("x-1", a));
  CHECK(g.is_polynomial());
  CHECK(g.num() == pp("x+1", a));
  // common monomial content cancels
  RationalFunction h = RationalFunction::make(pp("x^2*y", a), pp("x*y^2", a));
  CHECK(h.num() == pp("x", a));
  CHECK(h.den() == pp("y", a));
  CHECK_THROWS_AS(RationalFunction::make(pp("x", a), pp("0", a)), error);
}
