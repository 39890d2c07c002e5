#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gjac/curve.hpp"
#include "gjac/error.hpp"
#include "gjac/local.hpp"
#include "gjac/numtheory.hpp"
#include "gjac/poly.hpp"

namespace gjac {

/// Reduced divisor class in Mumford form: u monic, deg v < deg u <= g,
/// u | v^2 - f. It stands for the divisor D_u - (deg u) inf where D_u is
/// the effective divisor cut out by u(x) = 0, y = v(x).
template <FieldElement K>
struct MumfordClass {
  Poly<K> u;
  Poly<K> v;

  bool is_identity() const { return u.degree() == 0; }
  bool operator==(const MumfordClass& o) const { return u == o.u && v == o.v; }
  bool operator<(const MumfordClass& o) const {
    if (!(u == o.u)) return u < o.u;
    return v < o.v;
  }
  std::string to_string() const { return "(" + u.to_string() + ", " + v.to_string() + ")"; }
};

/// Rational function (a(x) + b(x) y) / d(x) on the curve.
template <FieldElement K>
struct TrackedFunction {
  Poly<K> a;
  Poly<K> b;
  Poly<K> d;

  static TrackedFunction one(const typename K::Field& F) {
    return {Poly<K>::constant(F.one()), Poly<K>(F), Poly<K>::constant(F.one())};
  }
  static TrackedFunction of_poly(const Poly<K>& p) {
    return {p, Poly<K>(p.field()), Poly<K>::constant(p.field().one())};
  }

  bool is_constant_one() const { return a == d && b.is_zero(); }

  /// Product, reducing y^2 to f and cancelling common polynomial factors.
  TrackedFunction mul(const TrackedFunction& o, const Poly<K>& f) const {
    TrackedFunction r{a * o.a + b * o.b * f, a * o.b + b * o.a, d * o.d};
    r.normalize();
    return r;
  }
  TrackedFunction div_poly(const Poly<K>& p) const {
    TrackedFunction r{a, b, d * p};
    r.normalize();
    return r;
  }

  /// Leading term at a point of the curve (numerator over denominator).
  LeadingTerm<K> leading_at(const HyperellipticCurve<K>& C, const CurvePoint<K>& P) const {
    return leading_term(C, P, a, b) / leading_term(C, P, d, Poly<K>(d.field()));
  }

  void normalize() {
    Poly<K> g = gcd(gcd(a, b), d);
    if (g.degree() > 0) {
      a = a / g;
      b = b / g;
      d = d / g;
    }
    const K s = d.lc().inv();
    a = a.scaled(s);
    b = b.scaled(s);
    d = d.scaled(s);
  }
};

/// Arithmetic in the Jacobian of an odd-degree model y^2 = f(x), with
/// infinity as base point.
template <FieldElement K>
class Jacobian {
 public:
  using Class = MumfordClass<K>;
  using Function = TrackedFunction<K>;
  using Point = CurvePoint<K>;

  explicit Jacobian(HyperellipticCurve<K> curve) : C_(std::move(curve)) {
    if (!C_.odd_degree()) throw DomainError("Mumford arithmetic requires an odd-degree model");
  }

  const HyperellipticCurve<K>& curve() const { return C_; }
  int genus() const { return C_.genus(); }
  typename K::Field field() const { return C_.field(); }

  Class identity() const { return {Poly<K>::constant(field().one()), Poly<K>(field())}; }

  bool is_valid(const Class& c) const {
    if (c.u.is_zero() || !(c.u.lc() == field().one())) return false;
    if (c.u.degree() > genus()) return false;
    if (c.v.degree() >= c.u.degree()) return false;
    return (c.v * c.v - C_.f()) % c.u == Poly<K>(field());
  }

  /// [P - inf]
  Class point_class(const Point& P) const {
    C_.require(P);
    if (P.at_infinity) return identity();
    Class c{Poly<K>::linear(P.x), Poly<K>::constant(P.y)};
    return reduce(c).first;
  }

  /// [x - z]
  Class class_from_pair(const Point& x, const Point& z) const { return add(point_class(x), neg(point_class(z))); }

  Class neg(const Class& c) const { return {c.u, (-c.v) % c.u}; }

  /// Cantor composition followed by reduction; h satisfies
  /// div(h) = D_a + D_b - D_{a+b}.
  std::pair<Class, Function> add_tracked(const Class& a, const Class& b) const {
    const Poly<K>& f = C_.f();
    auto [d0, e1, e2] = xgcd(a.u, b.u);
    auto [d, c1, c2] = xgcd(d0, a.v + b.v);
    const Poly<K> s1 = c1 * e1;
    const Poly<K> s2 = c1 * e2;
    const Poly<K>& s3 = c2;
    const Poly<K> u = (a.u * b.u) / (d * d);
    Poly<K> v = ((s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + f)) / d) % u;
    auto [r, h] = reduce(Class{u, v});
    Function total = Function::of_poly(d).mul(h, f);
    return {std::move(r), std::move(total)};
  }

  Class add(const Class& a, const Class& b) const { return add_tracked(a, b).first; }

  /// n * a with h satisfying div(h) = n D_a - D_{na}.
  std::pair<Class, Function> smul_tracked(long long n, const Class& a) const {
    if (n < 0) {
      const unsigned long long m = static_cast<unsigned long long>(-(n + 1)) + 1;
      auto [r, h] = smul_tracked_pos(m, neg(a));
      return {r, h.div_poly(a.u.pow(static_cast<unsigned>(m)))};
    }
    return smul_tracked_pos(static_cast<unsigned long long>(n), a);
  }

  Class smul(long long n, const Class& a) const {
    if (n < 0) return smul_pos(static_cast<unsigned long long>(-(n + 1)) + 1, neg(a));
    return smul_pos(static_cast<unsigned long long>(n), a);
  }

  Class smul_mpz(const mpz_class& n, const Class& a) const {
    if (n < 0) return smul_mpz(-n, neg(a));
    Class acc = identity();
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      acc = add(acc, acc);
      if (mpz_tstbit(n.get_mpz_t(), i) != 0) acc = add(acc, a);
    }
    return acc;
  }

  /// Reduce a semi-reduced pair; h satisfies div(h) = D_in - D_out.
  std::pair<Class, Function> reduce(Class c) const {
    const Poly<K>& f = C_.f();
    Function h = Function::one(field());
    c.v = c.v % c.u;
    while (c.u.degree() > genus()) {
      Poly<K> u2 = ((f - c.v * c.v) / c.u).monic();
      Poly<K> v2 = (-c.v) % u2;
      // (y - v) / u'
      Function step{-c.v, Poly<K>::constant(field().one()), u2};
      h = h.mul(step, f);
      c = Class{std::move(u2), std::move(v2)};
    }
    const K s = c.u.lc().inv();
    c.u = c.u.scaled(s);
    return {c, h};
  }

  /// Exact order over a finite field. Uses the Weil interval: direct
  /// stepping for small groups, baby-step giant-step otherwise.
  std::uint64_t order(const Class& a) const
    requires(K::Field::is_finite())
  {
    if (a.is_identity()) return 1;
    const auto [lo, hi] = weil_interval();
    std::uint64_t multiple = 0;
    if (hi <= 4096) {
      Class acc = a;
      for (std::uint64_t k = 1; k <= hi; ++k) {
        if (acc.is_identity()) return k;
        acc = add(acc, a);
      }
      throw DomainError("order: no multiple found inside the Weil bound");
    }
    std::uint64_t s = 1;
    while (s * s < hi - lo + 1) ++s;
    std::map<Class, std::uint64_t> baby;
    Class acc = identity();
    for (std::uint64_t j = 0; j < s; ++j) {
      baby.emplace(acc, j);
      acc = add(acc, a);
    }
    const Class giant = smul(static_cast<long long>(s), a);
    Class r = smul(static_cast<long long>(lo), a);
    for (std::uint64_t i = 0; lo + i * s <= hi + s; ++i) {
      auto it = baby.find(r);
      if (it != baby.end() && lo + i * s > it->second) {
        multiple = lo + i * s - it->second;
        break;
      }
      r = add(r, giant);
    }
    if (multiple == 0) throw DomainError("order: no multiple found inside the Weil bound");
    std::uint64_t n = multiple;
    for (const auto& [p, e] : factor(multiple)) {
      for (unsigned k = 0; k < e; ++k) {
        if (smul(static_cast<long long>(n / p), a).is_identity()) {
          n /= p;
        } else {
          break;
        }
      }
    }
    return n;
  }

  /// Conservative integer enclosure of [(sqrt q - 1)^{2g}, (sqrt q + 1)^{2g}].
  std::pair<std::uint64_t, std::uint64_t> weil_interval() const
    requires(K::Field::is_finite())
  {
    const std::uint64_t q = field().size();
    std::uint64_t r = 0;
    while ((r + 1) * (r + 1) <= q) ++r;
    const bool square = r * r == q;
    const std::uint64_t lo_base = r >= 1 ? r - 1 : 0;  // <= sqrt q - 1
    const std::uint64_t hi_base = (square ? r : r + 1) + 1;  // >= sqrt q + 1
    std::uint64_t lo = 1;
    std::uint64_t hi = 1;
    for (int i = 0; i < 2 * genus(); ++i) {
      lo *= lo_base;
      hi *= hi_base;
    }
    return {std::max<std::uint64_t>(lo, 1), hi};
  }

  /// Every reduced class (guarded to g <= 2, q <= 13).
  std::vector<Class> enumerate_group() const
    requires(K::Field::is_finite())
  {
    const auto F = field();
    if (genus() > 2 || F.size() > 13) throw GuardError("enumerate_group: only g <= 2 and q <= 13");
    std::vector<Class> out{identity()};
    const std::uint64_t q = F.size();
    for (int du = 1; du <= genus(); ++du) {
      std::uint64_t nu = 1;
      for (int i = 0; i < du; ++i) nu *= q;
      for (std::uint64_t iu = 0; iu < nu; ++iu) {
        std::vector<K> uc;
        std::uint64_t t = iu;
        for (int i = 0; i < du; ++i) {
          uc.push_back(F.element(t % q));
          t /= q;
        }
        uc.push_back(F.one());
        const Poly<K> u(F, uc);
        for (std::uint64_t iv = 0; iv < nu; ++iv) {
          std::vector<K> vc;
          std::uint64_t s = iv;
          for (int i = 0; i < du; ++i) {
            vc.push_back(F.element(s % q));
            s /= q;
          }
          const Poly<K> v(F, vc);
          if (((v * v - C_.f()) % u).is_zero()) out.push_back(Class{u, v});
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  Class smul_pos(unsigned long long n, const Class& a) const {
    Class acc = identity();
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

  std::pair<Class, Function> smul_tracked_pos(unsigned long long n, const Class& a) const {
    const Poly<K>& f = C_.f();
    Class acc = identity();
    Function h = Function::one(field());
    bool started = false;
    for (int i = 63; i >= 0; --i) {
      if (started) {
        auto [dbl, hd] = add_tracked(acc, acc);
        h = h.mul(h, f).mul(hd, f);
        acc = std::move(dbl);
      }
      if ((n >> i) & 1ULL) {
        auto [sum, hs] = add_tracked(acc, a);
        h = h.mul(hs, f);
        acc = std::move(sum);
        started = true;
      }
    }
    return {acc, h};
  }

  HyperellipticCurve<K> C_;
};

/// Orders of [x - z] for all ordered pairs of rational points, plus the
/// number of pairs x != z with [x - z] = [sigma z - sigma x].
template <FieldElement K>
struct TorsionCensus {
  std::vector<CurvePoint<K>> points;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> order;
  std::size_t off_diagonal_pairs = 0;
  std::size_t coincidences = 0;
  std::map<std::uint64_t, std::size_t> histogram;
};

template <FieldElement K>
TorsionCensus<K> torsion_census(const Jacobian<K>& J)
  requires(K::Field::is_finite())
{
  TorsionCensus<K> out;
  const auto& C = J.curve();
  out.points = C.points();
  std::map<MumfordClass<K>, std::uint64_t> memo;
  const std::size_t n = out.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& x = out.points[i];
      const auto& z = out.points[j];
      const auto c = J.class_from_pair(x, z);
      auto it = memo.find(c);
      if (it == memo.end()) it = memo.emplace(c, J.order(c)).first;
      out.order[{i, j}] = it->second;
      ++out.histogram[it->second];
      if (i != j) {
        ++out.off_diagonal_pairs;
        if (c == J.class_from_pair(C.involution(z), C.involution(x))) ++out.coincidences;
      }
    }
  }
  return out;
}

}  // namespace gjac
