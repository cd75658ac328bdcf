#include "doctest.h"

#include <random>

#include "biderive/module_syzygy.hpp"
#include "biderive/parser.hpp"
#include "oracles.hpp"

using namespace biderive;
using biderive::testing::membership_oracle;

namespace {

Polynomial pp(const std::string& s, const AmbientPtr& a) {
  return parse_polynomial(s, a);
}

IdealHandle ideal(std::initializer_list<std::string> gens, const AmbientPtr& a) {
  std::vector<Polynomial> v;
  for (const auto& g : gens) v.push_back(pp(g, a));
  return IdealHandle::from_generators(std::move(v), a);
}

}  // namespace

TEST_CASE("groebner basis examples") {
  auto lex = Ambient::make({"x", "y"}, MonomialOrder::Lex);
  IdealHandle I = ideal({"x^2-1", "x-1"}, lex);
  REQUIRE(I.basis().size() == 1);
  CHECK(I.basis()[0] == pp("x-1", lex));

  // One S-polynomial step: y(xy-1) - x(y^2-1) = x - y.
  IdealHandle J = ideal({"x*y-1", "y^2-1"}, lex);
  REQUIRE(J.basis().size() == 2);
  CHECK(J.basis()[0] == pp("y^2-1", lex));
  CHECK(J.basis()[1] == pp("x-y", lex));
  // cross-check against the independent membership oracle
  CHECK(membership_oracle(pp("x-y", lex), {pp("x*y-1", lex), pp("y^2-1", lex)}, 4));

  IdealHandle Z = ideal({}, lex);
  CHECK(Z.is_zero_ideal());
  CHECK(Z.basis().empty());
}

TEST_CASE("normal form examples") {
  auto a = Ambient::make({"x", "y"});
  CHECK(normal_form(pp("x^2", a), ideal({"x-1"}, a)) == pp("1", a));
  Polynomial f = pp("x^2*y - 3*x + 2", a);
  CHECK(normal_form(f, ideal({}, a)) == f);
  CHECK(normal_form(pp("x", a), ideal({"x-1", "y"}, a)) == pp("1", a));
}

TEST_CASE("membership and containment examples") {
  auto a = Ambient::make({"x", "y"});
  CHECK_FALSE(ideal_membership(pp("x", a), ideal({"x-1", "y"}, a)));
  // (x^2-1, x+1) = (x+1): the oracle certifies x^2-1 is in but x-1 is not.
  CHECK(ideal_membership(pp("x^2-1", a), ideal({"x^2-1", "x+1"}, a)));
  CHECK(membership_oracle(pp("x^2-1", a), {pp("x+1", a)}, 3));
  CHECK_FALSE(ideal_membership(pp("x-1", a), ideal({"x^2-1", "x+1"}, a)));
  CHECK_FALSE(membership_oracle(pp("x-1", a), {pp("x^2-1", a), pp("x+1", a)}, 6));
  CHECK(ideal_contains(ideal({"x"}, a), ideal({"x*y"}, a)));
  CHECK_FALSE(ideal_contains(ideal({"x*y"}, a), ideal({"x"}, a)));
}

TEST_CASE("elimination examples") {
  auto a = Ambient::make({"x", "y"});
  IdealHandle I = ideal({"y - x^2", "x"}, a);
  IdealHandle E = elimination_ideal(I, {"y"});
  REQUIRE(E.basis().size() == 1);
  CHECK(E.basis()[0] == pp("y", a));

  CHECK(elimination_ideal(ideal({"x-y"}, a), {"y"}).is_zero_ideal());

  auto b = Ambient::make({"x", "u", "v"});
  IdealHandle J = ideal({"u - x^2", "v - x^3"}, b);
  IdealHandle E2 = elimination_ideal(J, {"u", "v"});
  REQUIRE(E2.basis().size() == 1);
  CHECK(E2.basis()[0] == pp("u^3 - v^2", b));
}

TEST_CASE("intersection, quotient, saturation examples") {
  auto a = Ambient::make({"x", "y"});
  IdealHandle I = ideal_intersect(ideal({"x"}, a), ideal({"y"}, a));
  REQUIRE(I.basis().size() == 1);
  CHECK(I.basis()[0] == pp("x*y", a));

  IdealHandle Q = ideal_quotient(ideal({"x*y"}, a), pp("x", a));
  REQUIRE(Q.basis().size() == 1);
  CHECK(Q.basis()[0] == pp("y", a));

  IdealHandle S = ideal_saturation(ideal({"x^2*y"}, a), pp("x", a));
  REQUIRE(S.basis().size() == 1);
  CHECK(S.basis()[0] == pp("y", a));

  CHECK_THROWS_AS(ideal_quotient(ideal({"x"}, a), pp("0", a)), error);
  CHECK_THROWS_AS(ideal_saturation(ideal({"x"}, a), pp("0", a)), error);
}

TEST_CASE("intersection and saturation invariants") {
  auto a = Ambient::make({"x", "y"});
  IdealHandle I = ideal({"x^2", "x*y"}, a);
  IdealHandle J = ideal({"y^2-1"}, a);
  IdealHandle K = ideal_intersect(I, J);
  CHECK(ideal_contains(I, K));
  CHECK(ideal_contains(J, K));
  IdealHandle S = ideal_saturation(I, pp("x", a));
  CHECK(ideal_contains(S, I));
  CHECK(ideal_saturation(S, pp("x", a)) == S);  // idempotent
}

TEST_CASE("deterministic bases") {
  auto a = Ambient::make({"x", "y", "z"});
  IdealHandle I1 = ideal({"x*y - z^2", "y^2 - 1", "x*z - 3*y"}, a);
  IdealHandle I2 = ideal({"x*y - z^2", "y^2 - 1", "x*z - 3*y"}, a);
  REQUIRE(I1.basis().size() == I2.basis().size());
  for (std::size_t i = 0; i < I1.basis().size(); ++i) {
    CHECK(I1.basis()[i] == I2.basis()[i]);
    CHECK(I1.basis()[i].str() == I2.basis()[i].str());
    CHECK(I1.basis()[i].leading_coeff() == 1);
  }
}

TEST_CASE("membership agrees with the linear-algebra oracle") {
  auto a = Ambient::make({"x", "y", "z"});
  std::mt19937_64 rng(2026);
  auto rnd_poly = [&](int terms, std::uint32_t deg) {
    Polynomial p = Polynomial::zero(a);
    for (int t = 0; t < terms; ++t) {
      Monomial m(3);
      std::uint32_t budget = deg;
      for (std::size_t i = 0; i < 3; ++i) {
        std::uint32_t e = static_cast<std::uint32_t>(rng() % (budget + 1));
        m.exp[i] = e;
        budget -= e;
      }
      long c = static_cast<long>(rng() % 7) - 3;
      p = p + Polynomial::monomial_term(a, std::move(m), Scalar(c));
    }
    return p;
  };
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Polynomial> gens;
    for (int g = 0; g < 2; ++g) gens.push_back(rnd_poly(3, 2));
    IdealHandle I = IdealHandle::from_generators(gens, a);
    // member by construction
    Polynomial member = gens[0] * rnd_poly(2, 2) + gens[1] * rnd_poly(2, 1);
    CHECK(ideal_membership(member, I) == membership_oracle(member, gens, 6));
    // arbitrary probe
    Polynomial probe = rnd_poly(3, 2);
    bool gb = ideal_membership(probe, I);
    bool oracle = membership_oracle(probe, gens, 6);
    if (gb) {
      CHECK(oracle);
    } else {
      CHECK_FALSE(oracle);
    }
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("syzygy examples") {
  auto a = Ambient::make({"x", "y"});
  // Koszul relation between x and y in rank 1.
  std::vector<ModuleElement> cols;
  cols.push_back({{pp("x", a)}});
  cols.push_back({{pp("y", a)}});
  auto syz = syzygy_basis(cols, a);
  REQUIRE(syz.size() == 1);
  // the syzygy is proportional to (y, -x)
  const auto& s = syz[0];
  CHECK(s.coords[0] * pp("x", a) + s.coords[1] * pp("y", a) == pp("0", a));
  CHECK_FALSE(s.is_zero());

  // single column over a domain: no nonzero syzygies
  CHECK(syzygy_basis({{{pp("x", a)}}}, a).empty());

  // equal columns: (1, -1)
  auto syz2 = syzygy_basis({{{pp("x", a)}}, {{pp("x", a)}}}, a);
  REQUIRE(syz2.size() == 1);
  CHECK(syz2[0].coords[0] + syz2[0].coords[1] == pp("0", a));
  CHECK(syz2[0].coords[0] * pp("x", a) + syz2[0].coords[1] * pp("x", a) ==
        pp("0", a));

  std::vector<ModuleElement> bad;
  bad.push_back({{pp("x", a)}});
  bad.push_back({{pp("x", a), pp("y", a)}});
  CHECK_THROWS_AS(syzygy_basis(bad, a), error);
}

TEST_CASE("stable refine examples") {
  auto a = Ambient::make({"x", "y"});
  RationalFunction zero = RationalFunction::zero(a);
  RationalFunction x(pp("x", a));

  // x d/dx preserves (x)
  IdealHandle I = ideal({"x"}, a);
  auto J = stable_refine(I, {{x, zero}});
  CHECK(J == I);

  // d/dx preserves (y)
  IdealHandle Iy = ideal({"y"}, a);
  auto Jy = stable_refine(Iy, {{RationalFunction(pp("1", a)), zero}});
  CHECK(Jy == Iy);

  // x d/dx and x d/dy shrink the maximal ideal at (1,0) to its square
  IdealHandle m = ideal({"x-1", "y"}, a);
  auto m2 = stable_refine(m, {{x, zero}, {zero, x}});
  IdealHandle expected = ideal({"(x-1)^2", "(x-1)*y", "y^2"}, a);
  CHECK(m2 == expected);
  // jet-condition oracle: every generator vanishes to order 2 at (1,0)
  for (const auto& g : m2.basis())
    CHECK(biderive::testing::jets_vanish(g, {Scalar(1), Scalar(0)}, 1));
}

TEST_CASE("stable refine invariants") {
  auto a = Ambient::make({"x", "y"});
  RationalFunction zero = RationalFunction::zero(a);
  RationalFunction x(pp("x", a));
  IdealHandle I = ideal({"x-1", "y"}, a);
  std::vector<std::vector<RationalFunction>> ders = {{x, zero}, {zero, x}};
  IdealHandle J = stable_refine(I, ders);
  CHECK(ideal_contains(I, J));
  // J contains I*I
  for (const auto& g1 : I.basis())
    for (const auto& g2 : I.basis()) CHECK(ideal_membership(g1 * g2, J));
  // derivative images of J land in I
  for (const auto& g : J.basis()) {
    for (const auto& d : ders) {
      RationalFunction img = RationalFunction::zero(a);
      for (std::size_t v = 0; v < 2; ++v)
        img = img + RationalFunction(g.derivative(v)) * d[v];
      CHECK(img.is_polynomial());
      CHECK(ideal_membership(img.num(), I));
    }
  }
}
