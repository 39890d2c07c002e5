#include <doctest.h>

#include <random>

#include "gjac/decide.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace gjac;
using namespace gjac::test;

namespace {

using P = CurvePoint<Rat>;
using Status = RelationVerdict::Status;

QSpec rank2_spec(std::vector<std::vector<P>> fibers) { return QSpec(HyperellipticCurve<Rat>(rank2_f()), std::move(fibers)); }

/// Brute-force search for sum k_i P_i = O over |k_i| <= bound with the
/// chord-tangent law; returns the nonzero hits.
std::vector<std::vector<long>> elliptic_relations(const Poly<Rat>& f, const std::vector<P>& pts, long bound) {
  EllipticOracle<Rat> O{f};
  std::vector<std::vector<EllipticOracle<Rat>::Pt>> mult;
  for (const auto& Q : pts) {
    std::vector<EllipticOracle<Rat>::Pt> row;
    const EllipticOracle<Rat>::Pt base = Q.at_infinity ? std::nullopt : std::make_optional(std::make_pair(Q.x, Q.y));
    for (long k = -bound; k <= bound; ++k) row.push_back(O.mul(k, base));
    mult.push_back(std::move(row));
  }
  std::vector<std::vector<long>> hits;
  std::vector<long> k(pts.size(), -bound);
  while (true) {
    EllipticOracle<Rat>::Pt acc;
    bool zero = true;
    for (std::size_t i = 0; i < k.size(); ++i) {
      acc = O.add(acc, mult[i][static_cast<std::size_t>(k[i] + bound)]);
      if (k[i] != 0) zero = false;
    }
    if (!acc && !zero) hits.push_back(k);
    std::size_t i = 0;
    for (; i < k.size(); ++i) {
      if (++k[i] <= bound) break;
      k[i] = -bound;
    }
    if (i == k.size()) break;
  }
  return hits;
}

IntVec iv(std::initializer_list<long> v) {
  IntVec r;
  for (long a : v) r.emplace_back(a);
  return r;
}

}  // namespace

TEST_CASE("reduction mod p") {
  HyperellipticCurve<Rat> C(rank2_f());
  CHECK_FALSE(is_good_prime(C, 2));
  CHECK(is_good_prime(C, 3));
  // disc(4x^3 + 4x^2 - 8x + 1) = 16 * 389
  CHECK_FALSE(is_good_prime(C, 389));
  CHECK(good_primes(C, {3, 200}) == std::vector<std::uint64_t>{3, 5, 7});
  const auto f = reduce_mod(qpoly({1, 0, 0}) * Poly<Rat>::constant(Rat(1, 3)), 3);
  CHECK_FALSE(f);
  Jacobian<Rat> J(C);
  Jacobian<Fp> J5(HyperellipticCurve<Fp>(*reduce_mod(C.f(), 5)));
  // reduction is a homomorphism on p-integral classes
  const auto pts = rank2_points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto a = J.point_class(pts[i]);
    const auto b = J.point_class(pts[i + 1]);
    const auto ra = reduce_class(a, J5), rb = reduce_class(b, J5), rs = reduce_class(J.add(a, b), J5);
    if (!ra || !rb || !rs) continue;
    CHECK(J5.add(*ra, *rb) == *rs);
  }
}

TEST_CASE("torsion verdicts") {
  Jacobian<Rat> E(HyperellipticCurve<Rat>(qpoly({0, -1, 0, 1})));
  CHECK(is_torsion_q(E, E.identity()).status_string() == "TorsionOfOrder(1)");
  const auto t = is_torsion_q(E, E.point_class(P::affine(0, 0)));
  CHECK(t.status_string() == "TorsionOfOrder(2)");
  CHECK(t.primes.size() == 2);
  CHECK(t.reduction_orders == std::vector<std::uint64_t>{2, 2});

  // (0,1) on the rank-2 curve: reduction orders force a contradiction
  Jacobian<Rat> J{HyperellipticCurve<Rat>(rank2_f())};
  const auto a = J.point_class(P::affine(0, 1));
  const auto v = is_torsion_q(J, a);
  CHECK(v.status == TorsionVerdict::Status::NotTorsion);
  EllipticOracle<Rat> O{rank2_f()};
  const EllipticOracle<Rat>::Pt pt = std::make_pair(Rat(0), Rat(1));
  auto acc = pt;
  for (int d = 1; d <= 50; ++d) {
    CHECK(acc.has_value());
    acc = O.add(acc, pt);
  }

  // y^2 = x^3 - 2, (3,5) has infinite order
  Jacobian<Rat> M(HyperellipticCurve<Rat>(qpoly({-2, 0, 0, 1})));
  CHECK(is_torsion_q(M, M.point_class(P::affine(3, 5))).status == TorsionVerdict::Status::NotTorsion);
  // y^2 = x^3 + 1 has a rational 6-torsion point (2,3)
  Jacobian<Rat> S(HyperellipticCurve<Rat>(qpoly({1, 0, 0, 1})));
  CHECK(is_torsion_q(S, S.point_class(P::affine(2, 3))).status_string() == "TorsionOfOrder(6)");
  CHECK(is_torsion_q(S, S.point_class(P::affine(0, 1))).status_string() == "TorsionOfOrder(3)");
}

TEST_CASE("relation lattices") {
  Jacobian<Rat> J{HyperellipticCurve<Rat>(rank2_f())};
  const auto a = J.point_class(P::affine(0, 1));
  const auto b = J.point_class(P::affine(1, 1));

  const auto dup = relation_lattice(J, {a, a});
  REQUIRE(dup.status == Status::Dependent);
  CHECK(dup.lattice.contains(iv({1, -1})));

  const auto tri = relation_lattice(J, {a, b, J.add(a, b)});
  REQUIRE(tri.status == Status::Dependent);
  CHECK(tri.lattice.contains(iv({1, 1, -1})));
  for (const auto& r : tri.lattice.basis()) CHECK(combine(J, {a, b, J.add(a, b)}, r).is_identity());

  Jacobian<Rat> E(HyperellipticCurve<Rat>(qpoly({0, -1, 0, 1})));
  const auto t = relation_lattice(E, {E.point_class(P::affine(0, 0))});
  REQUIRE(t.status == Status::Dependent);
  CHECK(t.lattice == IntLattice({iv({2})}, 1));

  const auto ind = relation_lattice(J, {a, b});
  CHECK(ind.status == Status::Independent);
  CHECK(elliptic_relations(rank2_f(), {P::affine(0, 1), P::affine(1, 1)}, 10).empty());

  CHECK_THROWS_AS(relation_lattice(J, {}), DomainError);
}

TEST_CASE("relation lattices agree with brute force on the rank-2 curve") {
  Jacobian<Rat> J{HyperellipticCurve<Rat>(rank2_f())};
  const auto pts = rank2_points();
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<P> chosen{pts[rng() % pts.size()], pts[rng() % pts.size()]};
    std::vector<QClass> classes;
    for (const auto& Q : chosen) classes.push_back(J.point_class(Q));
    const auto v = relation_lattice(J, classes);
    const auto hits = elliptic_relations(rank2_f(), chosen, 4);
    if (v.status == Status::Independent) {
      CHECK(hits.empty());
    } else {
      REQUIRE(v.status == Status::Dependent);
      for (const auto& r : v.lattice.basis()) CHECK(combine(J, classes, r).is_identity());
      for (const auto& h : hits) CHECK(v.candidates.contains(IntVec(h.begin(), h.end())));
      CHECK_FALSE(hits.empty());
    }
  }
}

TEST_CASE("anti-affine verdicts") {
  const auto zero = is_anti_affine(QSpec(HyperellipticCurve<Rat>(qpoly({0, 1})), {{P::affine(1, 1), P::affine(4, 2)}}));
  CHECK(zero.answer == AntiAffineVerdict::Answer::False);
  CHECK(*zero.certificate == iv({1}));

  const auto two = is_anti_affine(QSpec(HyperellipticCurve<Rat>(qpoly({0, -1, 0, 1})), {{P::affine(0, 0), P::infinity()}}));
  CHECK(two.answer == AntiAffineVerdict::Answer::False);
  CHECK(*two.certificate == iv({2}));

  CHECK(is_anti_affine(rank2_spec({{P::affine(0, 1), P::affine(1, 1)}})).answer == AntiAffineVerdict::Answer::True);
  // [x - sigma x] = 2[x - inf]
  CHECK(is_anti_affine(rank2_spec({{P::affine(0, 1), P::affine(0, -1)}})).answer == AntiAffineVerdict::Answer::True);
  // two nodes with [x1 - z1] = [z2 - x2] through the involution
  const auto dep = is_anti_affine(rank2_spec({{P::affine(0, 1), P::affine(1, 1)}, {P::affine(1, -1), P::affine(0, -1)}}));
  CHECK(dep.answer == AntiAffineVerdict::Answer::False);
  CHECK(dep.relations.lattice.contains(iv({1, -1})));

  const PrimeField F{7};
  SingularCurveSpec<Fp> ff(HyperellipticCurve<Fp>(fpoly(7, {0, -1, 0, 1})),
                           {{pt<Fp>(0, 0, F), CurvePoint<Fp>::infinity()}});
  CHECK_THROWS_AS(is_anti_affine(ff), DomainError);
}

TEST_CASE("genus-2 verdicts") {
  HyperellipticCurve<Rat> C(genus2_f());
  const auto v = is_anti_affine(QSpec(C, {{P::affine(0, 1), P::affine(1, 1)}}));
  CHECK(v.answer == AntiAffineVerdict::Answer::True);
  // [x - sigma x] and [sigma x - x] are negatives of each other
  const auto w = is_anti_affine(QSpec(C, {{P::affine(0, 1), P::affine(0, -1)}, {P::affine(1, -1), P::affine(1, 1)}}));
  CHECK(w.answer != AntiAffineVerdict::Answer::Undecided);
}

TEST_CASE("graded dimensions agree with the verdicts") {
  const QSpec two(HyperellipticCurve<Rat>(qpoly({0, -1, 0, 1})), {{P::affine(0, 0), P::infinity()}});
  CHECK(graded_dim(two, iv({0})) == 1);
  CHECK(graded_dim(two, iv({2})) == 1);
  CHECK(graded_dim(two, iv({3})) == 0);
  const auto box = graded_box(two, 5);
  CHECK(box.trivial == std::vector<IntVec>{iv({-4}), iv({-2}), iv({0}), iv({2}), iv({4})});
  CHECK(graded_box(two, 3).count == 3);

  const auto node = rank2_spec({{P::affine(0, 1), P::affine(1, 1)}});
  CHECK(graded_box(node, 10).count == 1);
  const auto pair = rank2_spec({{P::affine(0, 1), P::affine(1, 1), P::affine(-2, 1)}});
  const auto pb = graded_box(pair, 4);
  CHECK(pb.count == 1);
  CHECK(pb.trivial.front() == iv({0, 0}));

  const auto dep = rank2_spec({{P::affine(0, 1), P::affine(1, 1)}, {P::affine(1, -1), P::affine(0, -1)}});
  const auto v = is_anti_affine(dep);
  REQUIRE(v.certificate);
  CHECK(graded_dim(dep, *v.certificate) == 1);
  CHECK(graded_box(dep, 3).count == 7);
  CHECK_THROWS_AS(graded_dim(dep, iv({1})), DomainError);
}

TEST_CASE("anchor invariance") {
  const auto ind = rank2_spec({{P::affine(0, 1), P::affine(1, 1), P::affine(-2, 1)}});
  const auto c1 = basepoint_invariance_check(ind);
  CHECK(c1.invariant);
  CHECK(c1.transcript.size() == 3);

  const QSpec tors(HyperellipticCurve<Rat>(qpoly({0, -1, 0, 1})), {{P::affine(0, 0), P::affine(1, 0), P::affine(-1, 0)}});
  const auto c2 = basepoint_invariance_check(tors);
  CHECK(c2.invariant);

  const auto mixed = rank2_spec({{P::affine(0, 1), P::affine(1, 1), P::affine(0, -1)}, {P::affine(1, -1), P::affine(3, 11)}});
  CHECK(basepoint_invariance_check(mixed).invariant);

  // transform of relations: [x3 - x2] = L3 - L2
  const auto T = anchor_transform(ind, {1});
  CHECK(T == IntMatrix{iv({-1, 0}), iv({-1, 1})});
}
