#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gjac/curve.hpp"
#include "gjac/error.hpp"
#include "gjac/jacobian.hpp"
#include "gjac/linsys.hpp"
#include "gjac/local.hpp"

namespace gjac {

/// A smooth odd-degree model together with gluing fibers: fiber i is an
/// ordered list of d_i >= 2 distinct points identified to one ordinary
/// singularity. Points are pairwise distinct across all fibers.
template <FieldElement K>
class SingularCurveSpec {
 public:
  using Point = CurvePoint<K>;
  using Fiber = std::vector<Point>;

  SingularCurveSpec(HyperellipticCurve<K> curve, std::vector<Fiber> fibers)
      : C_(std::move(curve)), fibers_(std::move(fibers)) {
    if (!C_.odd_degree()) throw DomainError("singular curve: the smooth model must have odd degree");
    std::set<Point> seen;
    for (const auto& fiber : fibers_) {
      if (fiber.size() < 2) throw DomainError("singular curve: a fiber needs at least two points");
      for (const auto& P : fiber) {
        C_.require(P);
        if (!seen.insert(P).second) {
          throw DomainError("singular curve: point " + P.to_string() + " repeated (not an ordinary singularity)");
        }
      }
    }
  }

  const HyperellipticCurve<K>& curve() const { return C_; }
  const std::vector<Fiber>& fibers() const { return fibers_; }

  int torus_rank() const {
    int t = 0;
    for (const auto& f : fibers_) t += static_cast<int>(f.size()) - 1;
    return t;
  }
  int arithmetic_genus() const { return C_.genus() + torus_rank(); }

  std::vector<Point> marked() const {
    std::vector<Point> out;
    for (const auto& f : fibers_) out.insert(out.end(), f.begin(), f.end());
    return out;
  }

  /// Same curve with fiber i re-anchored at branch j (moved to the front).
  SingularCurveSpec with_anchor(std::size_t fiber, std::size_t branch) const {
    auto fibers = fibers_;
    std::rotate(fibers[fiber].begin(), fibers[fiber].begin() + static_cast<std::ptrdiff_t>(branch),
                fibers[fiber].begin() + static_cast<std::ptrdiff_t>(branch) + 1);
    return SingularCurveSpec(C_, std::move(fibers));
  }

 private:
  HyperellipticCurve<K> C_;
  std::vector<Fiber> fibers_;
};

/// Point of J(X): a class in J(C) with torus coordinates lambda[i][j-2] for
/// j = 2..d_i, all nonzero.
template <FieldElement K>
struct GenJacPoint {
  MumfordClass<K> base;
  std::vector<std::vector<K>> torus;

  bool operator==(const GenJacPoint& o) const { return base == o.base && torus == o.torus; }
  bool operator<(const GenJacPoint& o) const {
    if (!(base == o.base)) return base < o.base;
    return torus < o.torus;
  }

  std::string to_string() const {
    std::string s = "base=" + base.to_string() + " torus=[";
    for (std::size_t i = 0; i < torus.size(); ++i) {
      if (i != 0) s += ", ";
      s += "(";
      for (std::size_t j = 0; j < torus[i].size(); ++j) {
        if (j != 0) s += ",";
        s += torus[i][j].to_string();
      }
      s += ")";
    }
    return s + "]";
  }
};

namespace detail {

template <FieldElement K>
LeadingTerm<K> lt_pow(const LeadingTerm<K>& t, int m) {
  LeadingTerm<K> r{0, t.coeff.field().one()};
  const K c = m < 0 ? t.coeff.inv() : t.coeff;
  for (int i = 0; i < (m < 0 ? -m : m); ++i) r.coeff = r.coeff * c;
  r.order = t.order * m;
  return r;
}

}  // namespace detail

/// Affine rational points with x = n/d, |n| <= bound, 1 <= d <= bound, in
/// a fixed order; used to seed searches over Q. Empty over finite fields.
template <FieldElement K>
std::vector<CurvePoint<K>> small_height_points(const HyperellipticCurve<K>& C, long bound) {
  std::vector<CurvePoint<K>> out;
  if constexpr (is_rational_v<K>) {
    for (long d = 1; d <= bound; ++d) {
      for (long a = 0; a <= bound; ++a) {
        if (a == 0 && d != 1) continue;
        if (a != 0 && gcd(mpz_class(a), mpz_class(d)) != 1) continue;
        for (long n : {a, -a}) {
          const Rat x{mpz_class(n), mpz_class(d)};
          const auto y = C.field().sqrt(C.f()(x));
          if (y) {
            out.push_back(CurvePoint<K>::affine(x, *y));
            if (!y->is_zero()) out.push_back(CurvePoint<K>::affine(x, -*y));
          }
          if (a == 0) break;
        }
      }
    }
  } else {
    (void)C;
    (void)bound;
  }
  return out;
}

/// The generalized Jacobian as an explicit extension of J(C) by a torus.
///
/// Gauge: every class a gets a representative divisor R_a = D_{a+c} - D_c
/// avoiding the marked points, where c = c(a) is the first admissible entry
/// of a fixed candidate list. A divisor E ~ R_a + div(g) has coordinates
/// g(x_ij) / g(x_i1). Writing tau_a = 1 / h(a, c), where div h(a, c) =
/// D_a + D_c - D_{a+c}, gives R_a = D_a + div(tau_a), and the group law
/// transports coordinates by H = h(a,b) h(a+b,c3) / (h(a,c1) h(b,c2)).
template <FieldElement K>
class GeneralizedJacobian {
 public:
  using Class = MumfordClass<K>;
  using Point = CurvePoint<K>;
  using Coords = std::vector<std::vector<K>>;

  /// `pool` seeds the gauge search with additional rational points.
  explicit GeneralizedJacobian(SingularCurveSpec<K> spec, const std::vector<Point>& pool = {})
      : spec_(std::move(spec)), J_(spec_.curve()), marked_(spec_.marked()) {
    for (const auto& P : marked_) {
      if (P.at_infinity) infinity_marked_ = true;
    }
    build_pool(pool);
  }

  const SingularCurveSpec<K>& spec() const { return spec_; }
  const Jacobian<K>& jacobian() const { return J_; }

  GenJacPoint<K> neutral() const { return {J_.identity(), ones()}; }

  /// Point with the given base class and torus coordinates.
  GenJacPoint<K> lift(const Class& base, const Coords& torus) const {
    if (!J_.is_valid(base)) throw DomainError("gj_lift: invalid Mumford class");
    check_shape(torus);
    for (const auto& row : torus) {
      for (const auto& l : row) {
        if (l.is_zero()) throw DomainError("gj_lift: zero torus coordinate is a boundary point, not in J(X)");
      }
    }
    return {base, torus};
  }

  const Class& pi(const GenJacPoint<K>& a) const { return a.base; }

  GenJacPoint<K> add(const GenJacPoint<K>& a, const GenJacPoint<K>& b) const {
    auto [s, hab] = J_.add_tracked(a.base, b.base);
    const auto ga = gauge(a.base);
    const auto gb = gauge(b.base);
    const auto gs = gauge(s);
    std::vector<LeadingTerm<K>> H;
    for (const auto& P : marked_) {
      const auto t = hab.leading_at(J_.curve(), P) * gs.h.leading_at(J_.curve(), P) /
                     (ga.h.leading_at(J_.curve(), P) * gb.h.leading_at(J_.curve(), P));
      H.push_back(t);
    }
    Coords out = a.torus;
    const auto hv = fiber_ratios(H);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] = a.torus[i][j] * b.torus[i][j] * hv[i][j];
    }
    return {s, out};
  }

  GenJacPoint<K> neg(const GenJacPoint<K>& a) const {
    // (a, l) + (-a, m) = (0, l m H) must be neutral.
    const Class na = J_.neg(a.base);
    const auto probe = add(a, GenJacPoint<K>{na, ones()});
    Coords out = a.torus;
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] = probe.torus[i][j].inv();
    }
    return {na, out};
  }

  GenJacPoint<K> smul(long long n, const GenJacPoint<K>& a) const {
    if (n < 0) return smul_pos(static_cast<unsigned long long>(-(n + 1)) + 1, neg(a));
    return smul_pos(static_cast<unsigned long long>(n), a);
  }

  /// Coordinates of an explicit degree-0 divisor supported on rational
  /// points away from the marked points.
  GenJacPoint<K> from_divisor(const Divisor<K>& E) const {
    if (E.degree() != 0) throw DomainError("gj_from_divisor: divisor must have degree 0");
    for (const auto& P : marked_) {
      if (E.multiplicity(P) != 0) throw DomainError("gj_from_divisor: divisor meets marked point " + P.to_string());
    }
    const auto& C = J_.curve();
    std::vector<LeadingTerm<K>> G(marked_.size(), LeadingTerm<K>{0, C.field().one()});
    auto absorb = [&](const TrackedFunction<K>& h, int power) {
      for (std::size_t k = 0; k < marked_.size(); ++k) G[k] = G[k] * detail::lt_pow(h.leading_at(C, marked_[k]), power);
    };
    Class acc = J_.identity();
    for (const auto& [P, m] : E.terms()) {
      if (P.at_infinity) continue;
      C.require(P);
      auto [p, hp] = J_.reduce(Class{Poly<K>::linear(P.x), Poly<K>::constant(P.y)});
      absorb(hp, m);
      auto [mp, hm] = J_.smul_tracked(m, p);
      absorb(hm, 1);
      auto [sum, hs] = J_.add_tracked(acc, mp);
      absorb(hs, 1);
      acc = std::move(sum);
    }
    absorb(gauge(acc).h, 1);
    return {acc, fiber_ratios(G)};
  }

  /// All points over a finite field, ordered by (base, torus).
  std::vector<GenJacPoint<K>> elements() const
    requires(K::Field::is_finite())
  {
    const auto F = J_.field();
    const auto group = J_.enumerate_group();
    const int t = spec_.torus_rank();
    std::uint64_t per = 1;
    for (int i = 0; i < t; ++i) per *= F.size() - 1;
    if (per * group.size() > 1000000) throw GuardError("gj enumeration: more than 10^6 points");
    std::vector<GenJacPoint<K>> out;
    for (const auto& a : group) {
      for (std::uint64_t idx = 0; idx < per; ++idx) {
        Coords c = ones();
        std::uint64_t r = idx;
        for (auto& row : c) {
          for (auto& l : row) {
            l = F.element(1 + r % (F.size() - 1));
            r /= F.size() - 1;
          }
        }
        out.push_back({a, std::move(c)});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  struct Gauge {
    Class c;
    TrackedFunction<K> h;  // div h = D_a + D_c - D_{a+c}
  };

  /// The translate used for the representative divisor of a.
  Gauge gauge(const Class& a) const {
    for (const auto& c : candidates_) {
      auto [ac, h] = J_.add_tracked(a, c);
      if (!avoids(ac) || !avoids(c)) continue;
      if (infinity_marked_ && ac.u.degree() != c.u.degree()) continue;
      return {c, std::move(h)};
    }
    throw DomainError("gauge: no admissible representative avoiding the marked points (field too small or pool too small)");
  }

 private:
  Coords ones() const {
    Coords c;
    for (const auto& f : spec_.fibers()) c.emplace_back(f.size() - 1, J_.field().one());
    return c;
  }

  void check_shape(const Coords& torus) const {
    const auto& fs = spec_.fibers();
    if (torus.size() != fs.size()) throw DomainError("torus coordinates: wrong number of fibers");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (torus[i].size() != fs[i].size() - 1) throw DomainError("torus coordinates: wrong fiber length");
    }
  }

  /// Per fiber, value(x_ij) / value(x_i1) from leading terms of order 0.
  Coords fiber_ratios(const std::vector<LeadingTerm<K>>& vals) const {
    for (std::size_t k = 0; k < vals.size(); ++k) {
      if (vals[k].order != 0) {
        throw DomainError("internal: transport function is not a unit at " + marked_[k].to_string());
      }
    }
    Coords out;
    std::size_t k = 0;
    for (const auto& f : spec_.fibers()) {
      std::vector<K> row;
      for (std::size_t j = 1; j < f.size(); ++j) row.push_back(vals[k + j].coeff / vals[k].coeff);
      out.push_back(std::move(row));
      k += f.size();
    }
    return out;
  }

  bool avoids(const Class& c) const {
    for (const auto& P : marked_) {
      if (P.at_infinity) continue;
      if (c.u(P.x).is_zero() && c.v(P.x) == P.y) return false;
    }
    return true;
  }

  GenJacPoint<K> smul_pos(unsigned long long n, const GenJacPoint<K>& a) const {
    GenJacPoint<K> acc = neutral();
    bool started = false;
    for (int i = 63; i >= 0; --i) {
      if (started) acc = add(acc, acc);
      if ((n >> i) & 1ULL) {
        acc = add(acc, a);
        started = true;
      }
    }
    return acc;
  }

  void build_pool(const std::vector<Point>& extra) {
    const auto& C = J_.curve();
    std::vector<Point> pool;
    auto push = [&](const Point& P) {
      if (P.at_infinity || !C.contains(P)) return;
      if (std::find(pool.begin(), pool.end(), P) == pool.end()) pool.push_back(P);
    };
    if constexpr (K::Field::is_finite()) {
      for (const auto& P : C.points()) push(P);
    } else {
      for (const auto& P : marked_) push(P);
      for (const auto& P : C.weierstrass_points()) push(P);
      for (const auto& P : extra) push(P);
      for (const auto& P : small_height_points(C, 16)) push(P);
    }
    std::vector<Class> base;
    for (const auto& P : pool) base.push_back(J_.point_class(P));
    candidates_.push_back(J_.identity());
    for (const auto& b : base) {
      for (long long k : {1LL, -1LL, 2LL, -2LL, 3LL, -3LL}) candidates_.push_back(J_.smul(k, b));
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
      for (std::size_t j = i + 1; j < base.size(); ++j) {
        candidates_.push_back(J_.add(base[i], base[j]));
        candidates_.push_back(J_.add(base[i], J_.neg(base[j])));
      }
    }
    if constexpr (K::Field::is_finite()) {
      if (J_.genus() <= 2 && J_.field().size() <= 13) {
        for (const auto& c : J_.enumerate_group()) candidates_.push_back(c);
      }
    }
    std::vector<Class> unique;
    std::set<Class> seen;
    for (auto& c : candidates_) {
      if (seen.insert(c).second) unique.push_back(std::move(c));
    }
    candidates_ = std::move(unique);
  }

  SingularCurveSpec<K> spec_;
  Jacobian<K> J_;
  std::vector<Point> marked_;
  bool infinity_marked_ = false;
  std::vector<Class> candidates_;
};

}  // namespace gjac
