#pragma once

#include <climits>
#include <string>
#include <vector>

#include "gjac/curve.hpp"
#include "gjac/error.hpp"
#include "gjac/poly.hpp"

namespace gjac {

/// Truncated power series c_0 + c_1 t + ... + c_{n-1} t^{n-1}.
template <FieldElement K>
using Series = std::vector<K>;

namespace detail {

template <FieldElement K>
Series<K> series_mul(const Series<K>& a, const Series<K>& b, std::size_t prec, const typename K::Field& F) {
  Series<K> out(prec, F.zero());
  for (std::size_t i = 0; i < a.size() && i < prec; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < prec; ++j) out[i + j] = out[i + j] + a[i] * b[j];
  }
  return out;
}

/// p(X(t)) by Horner, truncated.
template <FieldElement K>
Series<K> series_compose(const Poly<K>& p, const Series<K>& x, std::size_t prec) {
  const auto F = p.field();
  Series<K> acc(prec, F.zero());
  for (int i = p.degree(); i >= 0; --i) {
    acc = series_mul(acc, x, prec, F);
    acc[0] = acc[0] + p.coeff(i);
  }
  return acc;
}

/// Multiplicity of a as a root of p (p != 0).
template <FieldElement K>
int root_multiplicity(Poly<K> p, const K& a) {
  const Poly<K> lin = Poly<K>::linear(a);
  int m = 0;
  while (!p.is_zero() && p(a).is_zero()) {
    p = p / lin;
    ++m;
  }
  return m;
}

}  // namespace detail

/// Local parametrization (X(t), Y(t)) of an affine point of C in a
/// uniformizer t: t = x - x0 at ordinary points, t = y at Weierstrass points.
template <FieldElement K>
struct LocalExpansion {
  Series<K> x;
  Series<K> y;
  /// ord_P(x - x0): 1 at ordinary points, 2 at Weierstrass points.
  int ramification = 1;
};

template <FieldElement K>
LocalExpansion<K> local_expansion(const HyperellipticCurve<K>& C, const CurvePoint<K>& P, std::size_t prec) {
  if (P.at_infinity) throw DomainError("local_expansion: affine point expected");
  C.require(P);
  const auto F = C.field();
  if (prec == 0) prec = 1;
  const Poly<K> h = C.f().shifted(P.x);  // f(x0 + w)
  LocalExpansion<K> e;
  if (!P.y.is_zero()) {
    Series<K> c(prec, F.zero());
    c[0] = P.y;
    const K inv2y = (F.from_int(2) * P.y).inv();
    for (std::size_t k = 1; k < prec; ++k) {
      K s = h.coeff(static_cast<int>(k));
      for (std::size_t i = 1; i < k; ++i) s = s - c[i] * c[k - i];
      c[k] = s * inv2y;
    }
    e.x = Series<K>(prec, F.zero());
    e.x[0] = P.x;
    if (prec > 1) e.x[1] = F.one();
    e.y = std::move(c);
    e.ramification = 1;
    return e;
  }
  // y = s, x = x0 + w(s) with s^2 = sum_{j>=1} h_j w^j; fixed point on w.
  const K inv1 = h.coeff(1).inv();
  Series<K> w(prec, F.zero());
  for (std::size_t it = 0; it < prec; ++it) {
    Series<K> rhs(prec, F.zero());
    if (prec > 2) rhs[2] = F.one();
    Series<K> wp = w;
    for (int j = 2; j <= h.degree(); ++j) {
      wp = detail::series_mul(wp, w, prec, F);
      for (std::size_t k = 0; k < prec; ++k) rhs[k] = rhs[k] - h.coeff(j) * wp[k];
    }
    for (auto& a : rhs) a = a * inv1;
    if (rhs == w) break;
    w = std::move(rhs);
  }
  w[0] = P.x;
  e.x = std::move(w);
  e.y = Series<K>(prec, F.zero());
  if (prec > 1) e.y[1] = F.one();
  e.ramification = 2;
  return e;
}

/// Leading term c * t^order of a function in a uniformizer t at a point.
template <FieldElement K>
struct LeadingTerm {
  int order = 0;
  K coeff{};

  LeadingTerm operator*(const LeadingTerm& o) const { return {order + o.order, coeff * o.coeff}; }
  LeadingTerm operator/(const LeadingTerm& o) const { return {order - o.order, coeff / o.coeff}; }
};

/// Leading term of a(x) + b(x) y at P on an odd-degree model. At infinity
/// the uniformizer is x^g / y, where x^i y^e has leading coefficient
/// lc(f)^{-(i + e g)} and order -(2i + e(2g+1)).
template <FieldElement K>
LeadingTerm<K> leading_term(const HyperellipticCurve<K>& C, const CurvePoint<K>& P, const Poly<K>& a,
                            const Poly<K>& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("leading term of the zero function");
  C.require(P);
  const auto F = C.field();
  if (P.at_infinity) {
    if (!C.odd_degree()) throw DomainError("leading term at infinity needs an odd-degree model");
    const int g = C.genus();
    const K il = C.f().lc().inv();
    auto term = [&](const Poly<K>& p, int e) {
      const int i = p.degree();
      K c = p.lc();
      for (int k = 0; k < i + e * g; ++k) c = c * il;
      return LeadingTerm<K>{-(2 * i + e * (2 * g + 1)), c};
    };
    if (b.is_zero()) return term(a, 0);
    if (a.is_zero()) return term(b, 1);
    const auto ta = term(a, 0);
    const auto tb = term(b, 1);
    return ta.order < tb.order ? ta : tb;
  }
  if (b.is_zero()) {
    const int m = detail::root_multiplicity(a, P.x);
    const int e = P.y.is_zero() ? 2 : 1;
    Poly<K> q = a;
    for (int k = 0; k < m; ++k) q = q / Poly<K>::linear(P.x);
    K c = q(P.x);
    if (e == 2) {
      // x - x0 = s^2 / f'(x0) + ...
      const K il = C.f().derivative()(P.x).inv();
      for (int k = 0; k < m; ++k) c = c * il;
    }
    return {e * m, c};
  }
  const Poly<K> norm = a * a - b * b * C.f();
  const int e = P.y.is_zero() ? 2 : 1;
  const int bound = e * detail::root_multiplicity(norm, P.x);
  const std::size_t prec = static_cast<std::size_t>(bound) + 1;
  const auto le = local_expansion(C, P, prec);
  const Series<K> sa = detail::series_compose(a, le.x, prec);
  const Series<K> sb = detail::series_compose(b, le.x, prec);
  const Series<K> sby = detail::series_mul(sb, le.y, prec, F);
  for (std::size_t k = 0; k < prec; ++k) {
    const K c = sa[k] + sby[k];
    if (!c.is_zero()) return {static_cast<int>(k), c};
  }
  throw DomainError("leading_term: precision bound violated");
}

}  // namespace gjac
