#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gjac/error.hpp"
#include "gjac/field.hpp"
#include "gjac/poly.hpp"

namespace gjac {

/// A K-rational point of y^2 = f(x): affine, or a point at infinity. For odd
/// degree models there is exactly one point at infinity (branch 0); even
/// degree models have two branches, +1 and -1, distinguished by the sign of
/// y / x^{g+1} relative to the canonical square root of lc(f).
template <FieldElement K>
struct CurvePoint {
  bool at_infinity = false;
  K x{};
  K y{};
  int branch = 0;

  static CurvePoint affine(K x, K y) { return CurvePoint{false, std::move(x), std::move(y), 0}; }
  static CurvePoint infinity(int branch = 0) { return CurvePoint{true, K{}, K{}, branch}; }

  bool operator==(const CurvePoint& o) const {
    if (at_infinity != o.at_infinity) return false;
    if (at_infinity) return branch == o.branch;
    return x == o.x && y == o.y;
  }
  bool operator<(const CurvePoint& o) const {
    if (at_infinity != o.at_infinity) return !at_infinity;
    if (at_infinity) return branch > o.branch;
    if (x != o.x) return x < o.x;
    return y < o.y;
  }

  std::string to_string() const {
    if (at_infinity) {
      if (branch == 0) return "inf";
      return branch > 0 ? "inf+" : "inf-";
    }
    return "(" + x.to_string() + "," + y.to_string() + ")";
  }
};

/// All roots of p in K, ascending, without multiplicity. Finite fields are
/// searched exhaustively; over Q the rational root theorem is used.
template <FieldElement K>
std::vector<K> roots(const Poly<K>& p);

/// Smooth hyperelliptic model y^2 = f(x) with f squarefree, deg f >= 1 and
/// odd characteristic. genus = ceil(deg f / 2) - 1.
template <FieldElement K>
class HyperellipticCurve {
 public:
  using Field = typename K::Field;
  using Point = CurvePoint<K>;

  explicit HyperellipticCurve(Poly<K> f) : f_(std::move(f)) {
    if (f_.degree() < 1) throw DomainError("curve: deg f must be at least 1");
    const Field field = f_.field();
    if (field.characteristic() == 2) throw DomainError("curve: characteristic 2 is not supported");
    if (!gcd(f_, f_.derivative()).is_one()) throw DomainError("curve: f is not squarefree (singular model)");
    genus_ = (f_.degree() + 1) / 2 - 1;
  }

  const Poly<K>& f() const { return f_; }
  Field field() const { return f_.field(); }
  int genus() const { return genus_; }
  bool odd_degree() const { return f_.degree() % 2 == 1; }

  /// Number of K-rational points at infinity: 1 for odd models, 2 or 0 for
  /// even models depending on whether lc(f) is a square.
  int infinity_count() const {
    if (odd_degree()) return 1;
    return field().sqrt(f_.lc()).has_value() ? 2 : 0;
  }

  bool contains(const Point& p) const {
    if (p.at_infinity) {
      if (odd_degree()) return p.branch == 0;
      return (p.branch == 1 || p.branch == -1) && infinity_count() == 2;
    }
    if (p.x.field() != field() || p.y.field() != field()) return false;
    return p.y * p.y == f_(p.x);
  }

  void require(const Point& p) const {
    if (!contains(p)) throw DomainError("point " + p.to_string() + " is not on the curve");
  }

  /// Hyperelliptic involution (x, y) -> (x, -y).
  Point involution(const Point& p) const {
    require(p);
    if (p.at_infinity) return Point::infinity(-p.branch);
    return Point::affine(p.x, -p.y);
  }

  bool is_weierstrass(const Point& p) const {
    if (p.at_infinity) return odd_degree();
    return p.y.is_zero();
  }

  /// All K-rational points: affine points ordered by (x, y), then infinity.
  std::vector<Point> points() const
    requires(K::Field::is_finite())
  {
    const Field field = this->field();
    if (field.size() > (1ULL << 22)) throw GuardError("enumerate_points: field too large");
    std::vector<Point> out;
    for (std::uint64_t i = 0; i < field.size(); ++i) {
      const K x = field.element(i);
      const auto s = field.sqrt(f_(x));
      if (!s) continue;
      if (s->is_zero()) {
        out.push_back(Point::affine(x, *s));
      } else {
        K a = *s;
        K b = -*s;
        if (b < a) std::swap(a, b);
        out.push_back(Point::affine(x, a));
        out.push_back(Point::affine(x, b));
      }
    }
    if (odd_degree()) {
      out.push_back(Point::infinity(0));
    } else if (infinity_count() == 2) {
      out.push_back(Point::infinity(1));
      out.push_back(Point::infinity(-1));
    }
    return out;
  }

  /// Rational Weierstrass points (roots of f, then infinity for odd models).
  std::vector<Point> weierstrass_points() const {
    std::vector<Point> out;
    for (const auto& r : roots(f_)) out.push_back(Point::affine(r, field().zero()));
    if (odd_degree()) out.push_back(Point::infinity(0));
    return out;
  }

  std::string to_string() const { return "y^2 = " + f_.to_string(); }

  bool operator==(const HyperellipticCurve& o) const { return f_ == o.f_; }

 private:
  Poly<K> f_;
  int genus_ = 0;
};

/// An odd-degree model of a curve together with the point map from the
/// original model. Even models are moved by x = a + 1/t, y = s / t^{g+1}
/// where (a, 0) is a rational Weierstrass point; odd models map identically.
template <FieldElement K>
class OddModel {
 public:
  using Point = CurvePoint<K>;

  static std::optional<OddModel> of(const HyperellipticCurve<K>& c) {
    if (c.odd_degree()) return OddModel(c, c, std::nullopt);
    const auto rs = roots(c.f());
    if (rs.empty()) return std::nullopt;
    const K a = rs.front();
    const int n = c.f().degree();
    const Poly<K> h = c.f().shifted(a);
    std::vector<K> coeffs(static_cast<std::size_t>(n), c.field().zero());
    for (int j = 0; j < n; ++j) coeffs[static_cast<std::size_t>(j)] = h.coeff(n - j);
    return OddModel(c, HyperellipticCurve<K>(Poly<K>(c.field(), std::move(coeffs))), a);
  }

  const HyperellipticCurve<K>& original() const { return original_; }
  const HyperellipticCurve<K>& curve() const { return model_; }
  bool is_identity() const { return !shift_.has_value(); }
  const std::optional<K>& shift() const { return shift_; }

  Point map(const Point& p) const {
    original_.require(p);
    if (!shift_) return p;
    const auto field = original_.field();
    const int g = original_.genus();
    if (p.at_infinity) {
      const auto root = field.sqrt(original_.f().lc());
      const K s = p.branch > 0 ? *root : -*root;
      return Point::affine(field.zero(), s);
    }
    if (p.x == *shift_) return Point::infinity(0);
    const K t = (p.x - *shift_).inv();
    K tp = field.one();
    for (int i = 0; i < g + 1; ++i) tp = tp * t;
    return Point::affine(t, p.y * tp);
  }

 private:
  OddModel(HyperellipticCurve<K> original, HyperellipticCurve<K> model, std::optional<K> shift)
      : original_(std::move(original)), model_(std::move(model)), shift_(std::move(shift)) {}

  HyperellipticCurve<K> original_;
  HyperellipticCurve<K> model_;
  std::optional<K> shift_;
};

namespace detail {

/// Positive divisors of |n| (n != 0), ascending.
std::vector<mpz_class> mpz_divisors(const mpz_class& n);

}  // namespace detail

template <FieldElement K>
std::vector<K> roots(const Poly<K>& p) {
  if (p.is_zero()) throw DomainError("roots of the zero polynomial");
  const auto field = p.field();
  std::vector<K> out;
  if constexpr (K::Field::is_finite()) {
    if (field.size() > (1ULL << 22)) throw GuardError("roots: field too large for exhaustive search");
    for (std::uint64_t i = 0; i < field.size(); ++i) {
      const K x = field.element(i);
      if (p(x).is_zero()) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
  } else {
    static_assert(is_rational_v<K>, "roots: unsupported infinite field");
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) l = lcm(l, c.den());
    std::vector<mpz_class> ic;
    for (const auto& c : p.coeffs()) ic.push_back(c.num() * (l / c.den()));
    std::size_t low = 0;
    while (ic[low] == 0) ++low;
    if (low > 0) out.push_back(Rat(0));
    if (ic.size() - 1 > low) {
      const auto num_divs = detail::mpz_divisors(ic[low]);
      const auto den_divs = detail::mpz_divisors(ic.back());
      for (const auto& d : num_divs) {
        for (const auto& e : den_divs) {
          for (int sign : {1, -1}) {
            const Rat cand(sign * d, e);
            if (p(cand).is_zero() && std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
          }
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
}

}  // namespace gjac
