#include <doctest.h>

#include <cmath>
#include <random>

#include "gjac/curve.hpp"
#include "gjac/local.hpp"
#include "support/fixtures.hpp"

using namespace gjac;
using gjac::test::fpoly;
using gjac::test::qpoly;

TEST_CASE("construction and genus") {
  CHECK(HyperellipticCurve<Rat>(qpoly({1, 0, 0, 0, 0, 1})).genus() == 2);
  CHECK(HyperellipticCurve<Rat>(qpoly({0, -1, 0, 1})).genus() == 1);
  CHECK(HyperellipticCurve<Rat>(qpoly({-1, 0, 1})).genus() == 0);
  CHECK(HyperellipticCurve<Rat>(qpoly({0, 1})).genus() == 0);
  CHECK(HyperellipticCurve<Rat>(qpoly({1, 0, 0, 0, 0, 0, 1})).genus() == 2);
  CHECK_THROWS_AS(HyperellipticCurve<Rat>(qpoly({0, 0, 1, 1})), DomainError);
  CHECK_THROWS_AS(HyperellipticCurve<Rat>(qpoly({5})), DomainError);
  // x^3 + 1 = (x+1)^3 mod 3
  CHECK_THROWS_AS(HyperellipticCurve<Fp>(fpoly(3, {1, 0, 0, 1})), DomainError);
}

TEST_CASE("membership and involution") {
  HyperellipticCurve<Rat> C(qpoly({1, 0, 0, 0, 0, 1}));
  using P = CurvePoint<Rat>;
  CHECK(C.contains(P::affine(0, 1)));
  CHECK_FALSE(C.contains(P::affine(1, 1)));
  CHECK(C.contains(P::infinity()));
  CHECK_FALSE(C.contains(P::infinity(1)));
  CHECK(C.involution(P::affine(0, 1)) == P::affine(0, -1));
  CHECK(C.involution(P::affine(-1, 0)) == P::affine(-1, 0));
  CHECK(C.involution(P::infinity()) == P::infinity());
  CHECK_THROWS_AS(C.involution(P::affine(1, 1)), DomainError);

  HyperellipticCurve<Rat> E(qpoly({1, 0, 0, 0, 0, 0, 1}));
  CHECK(E.infinity_count() == 2);
  CHECK(E.involution(P::infinity(1)) == P::infinity(-1));
  CHECK(HyperellipticCurve<Rat>(qpoly({1, 0, 0, 0, 0, 0, 2})).infinity_count() == 0);
}

TEST_CASE("point enumeration") {
  HyperellipticCurve<Fp> E(fpoly(5, {0, -1, 0, 1}));
  const auto pts = E.points();
  CHECK(pts.size() == 8);
  CHECK(pts.back().at_infinity);

  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    for (const auto& f : {std::vector<long long>{1, 0, 0, 0, 0, 1}, std::vector<long long>{-1, 0, 1},
                          std::vector<long long>{1, -1, 0, 0, 0, 0, 0, 1}, std::vector<long long>{1, 1, 0, 1},
                          std::vector<long long>{2, 0, 0, 1, 0, 0, 1}}) {
      std::vector<Fp> c;
      for (long long a : f) c.push_back(PrimeField{p}.from_int(a));
      Poly<Fp> poly(PrimeField{p}, c);
      if (poly.degree() < 1 || !gcd(poly, poly.derivative()).is_one()) continue;
      HyperellipticCurve<Fp> C(poly);
      const auto all = C.points();
      const double dev = std::abs(static_cast<double>(all.size()) - static_cast<double>(p + 1));
      CHECK(dev <= 2.0 * C.genus() * std::sqrt(static_cast<double>(p)) + 1e-9);
      for (const auto& P : all) {
        CHECK(C.contains(C.involution(P)));
        CHECK(C.involution(C.involution(P)) == P);
      }
    }
  }
}

TEST_CASE("rational roots") {
  // 4x^3 - 4x = 4x(x-1)(x+1), plus a rational non-integer root
  CHECK(roots(qpoly({0, -4, 0, 4})) == std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
  CHECK(roots(qpoly({-1, 2})) == std::vector<Rat>{Rat(mpz_class(1), mpz_class(2))});
  CHECK(roots(qpoly({1, 0, 1})).empty());
  CHECK(roots(fpoly(5, {0, -1, 0, 1})).size() == 3);
}

TEST_CASE("odd model of an even-degree curve") {
  // y^2 = (x^2 - 1)(x^2 - 4): Weierstrass point x = -2 moves to infinity
  HyperellipticCurve<Rat> C(qpoly({4, 0, -5, 0, 1}));
  auto M = OddModel<Rat>::of(C);
  REQUIRE(M.has_value());
  CHECK(M->curve().odd_degree());
  CHECK(M->curve().genus() == 1);
  using P = CurvePoint<Rat>;
  for (const auto& pt : {P::affine(1, 0), P::affine(2, 0), P::affine(0, 2), P::affine(0, -2), P::affine(3, 2 * 5 * 2),
                         P::infinity(1), P::infinity(-1)}) {
    if (!C.contains(pt)) continue;
    CHECK(M->curve().contains(M->map(pt)));
  }
  CHECK(M->map(P::affine(-2, 0)).at_infinity);
  CHECK_FALSE(OddModel<Rat>::of(HyperellipticCurve<Rat>(qpoly({1, 0, 0, 0, 1}))).has_value());
}

TEST_CASE("local expansions satisfy the curve equation") {
  HyperellipticCurve<Fp> C(fpoly(13, {3, 1, 0, 0, 0, 1}));
  const std::size_t prec = 8;
  for (const auto& P : C.points()) {
    if (P.at_infinity) continue;
    const auto le = local_expansion(C, P, prec);
    const auto lhs = detail::series_mul(le.y, le.y, prec, C.field());
    const auto rhs = detail::series_compose(C.f(), le.x, prec);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("leading terms") {
  HyperellipticCurve<Rat> C(qpoly({0, -1, 0, 1}));
  using P = CurvePoint<Rat>;
  const Poly<Rat> zero(RationalField{});
  // x at (0,0) has order 2 (ramified), x - 2 at (0,0) is a unit
  auto t = leading_term(C, P::affine(0, 0), qpoly({0, 1}), zero);
  CHECK(t.order == 2);
  CHECK(t.coeff == Rat(-1));  // x = s^2 / f'(0) + ..., f'(0) = -1
  CHECK(leading_term(C, P::affine(0, 0), zero, qpoly({1})).order == 1);
  CHECK(leading_term(C, P::infinity(), qpoly({0, 1}), zero).order == -2);
  CHECK(leading_term(C, P::infinity(), zero, qpoly({1})).order == -3);
  // y - x vanishes at ... (x^3 - x = x^2 at x = 0 only with y = 0): check a cancellation
  HyperellipticCurve<Rat> D(qpoly({1, 0, 0, 1}));  // y^2 = x^3 + 1, point (0,1)
  // y - 1 = x^3/2 + ... at (0,1)
  auto s = leading_term(D, P::affine(0, 1), qpoly({-1}), qpoly({1}));
  CHECK(s.order == 3);
  CHECK(s.coeff == Rat(mpz_class(1), mpz_class(2)));
}
