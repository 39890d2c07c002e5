#include <doctest.h>

#include "gjac/construct.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace gjac;
using namespace gjac::test;

namespace {

using P = CurvePoint<Rat>;

HyperellipticCurve<Rat> rank2() { return HyperellipticCurve<Rat>(rank2_f()); }

std::vector<P> first(std::size_t n) {
  auto pts = rank2_points();
  pts.resize(n);
  return pts;
}

/// Independent check of a genus-1 selection: no relation with |k_i| <= 6
/// among the difference points, by the chord-tangent law.
bool no_small_relation(const QSpec& spec) {
  EllipticOracle<Rat> O{spec.curve().f()};
  std::vector<EllipticOracle<Rat>::Pt> d;
  auto pt = [](const P& X) -> EllipticOracle<Rat>::Pt {
    if (X.at_infinity) return std::nullopt;
    return std::make_pair(X.x, X.y);
  };
  for (const auto& f : spec.fibers()) {
    for (std::size_t j = 1; j < f.size(); ++j) d.push_back(O.add(pt(f[j]), O.neg(pt(f[0]))));
  }
  const long B = 6;
  std::vector<long> k(d.size(), -B);
  while (true) {
    EllipticOracle<Rat>::Pt acc;
    bool zero = true;
    for (std::size_t i = 0; i < k.size(); ++i) {
      acc = O.add(acc, O.mul(k[i], d[i]));
      zero = zero && k[i] == 0;
    }
    if (!acc && !zero) return false;
    std::size_t i = 0;
    while (i < k.size() && k[i] == B) k[i++] = -B;
    if (i == k.size()) return true;
    ++k[i];
  }
}

}  // namespace

TEST_CASE("one node from a rank-2 point list") {
  const auto r = select_nodal(rank2(), first(8), 1);
  REQUIRE(r.fibers.size() == 1);
  CHECK(r.fibers[0].size() == 2);
  CHECK(r.verdict.answer == AntiAffineVerdict::Answer::True);
  CHECK(r.low_genus);
  CHECK(no_small_relation(r.spec));
}

TEST_CASE("two nodes: certified, disjoint, oracle-independent") {
  const auto r = select_nodal(rank2(), first(8), 2);
  REQUIRE(r.fibers.size() == 2);
  std::set<std::size_t> used;
  for (const auto& f : r.fibers) used.insert(f.begin(), f.end());
  CHECK(used.size() == 4);
  CHECK(is_anti_affine(r.spec).answer == AntiAffineVerdict::Answer::True);
  CHECK(no_small_relation(r.spec));
}

TEST_CASE("ordinary fiber profile") {
  const auto r = select_ordinary(rank2(), first(8), {3});
  REQUIRE(r.fibers.size() == 1);
  CHECK(r.fibers[0].size() == 3);
  CHECK(r.spec.torus_rank() == 2);
  CHECK(no_small_relation(r.spec));
}

TEST_CASE("torsion-only points exhaust") {
  const HyperellipticCurve<Rat> C(qpoly({0, -1, 0, 1}));
  const std::vector<P> pts{P::affine(0, 0), P::affine(1, 0), P::affine(-1, 0), P::infinity(0)};
  // every difference of these points is 2-torsion
  EllipticOracle<Rat> O{C.f()};
  for (const auto& X : pts) {
    const EllipticOracle<Rat>::Pt x = X.at_infinity ? std::nullopt : std::make_optional(std::make_pair(X.x, X.y));
    CHECK_FALSE(O.mul(2, x).has_value());
  }
  try {
    select_nodal(C, pts, 1);
    FAIL("expected exhaustion");
  } catch (const ExhaustionError& e) {
    CHECK(e.partial().empty());
  }
  try {
    select_nodal(C, pts, 1, ConstructOptions{{}, true});
    FAIL("expected exhaustion");
  } catch (const ExhaustionError& e) {
    CHECK(e.partial().empty());
  }
}

TEST_CASE("rank bound forces exhaustion with a partial selection") {
  // rank 2: three independent difference classes cannot exist
  try {
    select_nodal(rank2(), first(8), 3);
    FAIL("expected exhaustion");
  } catch (const ExhaustionError& e) {
    CHECK(e.partial().size() == 2);
    QSpec partial(rank2(), [&] {
      std::vector<std::vector<P>> fs;
      for (const auto& f : e.partial()) fs.push_back({first(8)[f[0]], first(8)[f[1]]});
      return fs;
    }());
    CHECK(is_anti_affine(partial).answer == AntiAffineVerdict::Answer::True);
  }
  CHECK_THROWS_AS(select_nodal(rank2(), first(8), 3, ConstructOptions{{}, true}), ExhaustionError);
}

TEST_CASE("certification cap stops the search") {
  ConstructOptions opts{{}, true, 5};
  try {
    select_nodal(rank2(), first(8), 3, opts);
    FAIL("expected exhaustion");
  } catch (const ExhaustionError& e) {
    CHECK(std::string(e.what()).find("cap") != std::string::npos);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(select_nodal(rank2(), first(8), 0), DomainError);
  CHECK_THROWS_AS(select_ordinary(rank2(), first(8), {1, 3}), DomainError);
  CHECK_THROWS_AS(select_ordinary(rank2(), first(8), {}), DomainError);
  CHECK_THROWS_AS(select_nodal(rank2(), first(3), 2), DomainError);
  CHECK_THROWS_AS(select_nodal(rank2(), {P::affine(0, 1), P::affine(0, 1), P::affine(1, 1)}, 1), DomainError);
  CHECK_THROWS_AS(select_nodal(rank2(), {P::affine(0, 2), P::affine(1, 1)}, 1), DomainError);
  const HyperellipticCurve<Rat> line(qpoly({0, 1}));
  CHECK_THROWS_AS(select_nodal(line, {P::affine(1, 1), P::affine(4, 2)}, 1), DomainError);
}

TEST_CASE("deterministic output") {
  const auto a = select_nodal(rank2(), first(8), 2);
  const auto b = select_nodal(rank2(), first(8), 2);
  CHECK(a.fibers == b.fibers);
  CHECK(a.transcript == b.transcript);
}
