#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "gjac/curve.hpp"
#include "gjac/jacobian.hpp"
#include "gjac/poly.hpp"

namespace gjac::test {

inline Poly<Rat> qpoly(std::initializer_list<long long> c) {
  std::vector<Rat> v;
  for (long long a : c) v.emplace_back(a);
  return Poly<Rat>(RationalField{}, v);
}

inline Poly<Fp> fpoly(std::uint64_t p, std::initializer_list<long long> c) {
  PrimeField F{p};
  std::vector<Fp> v;
  for (long long a : c) v.push_back(F.from_int(a));
  return Poly<Fp>(F, v);
}

template <FieldElement K>
CurvePoint<K> pt(long long x, long long y, const typename K::Field& F) {
  return CurvePoint<K>::affine(F.from_int(x), F.from_int(y));
}

/// Random class as a small combination of point classes.
template <FieldElement K>
MumfordClass<K> random_class(const Jacobian<K>& J, const std::vector<CurvePoint<K>>& pts, std::mt19937_64& rng,
                             int terms, int max_coeff) {
  auto acc = J.identity();
  for (int i = 0; i < terms; ++i) {
    const auto& P = pts[rng() % pts.size()];
    const long long k = static_cast<long long>(rng() % static_cast<unsigned>(2 * max_coeff + 1)) - max_coeff;
    acc = J.add(acc, J.smul(k, J.point_class(P)));
  }
  return acc;
}

/// Rational points on y^2 = 4x^3 + 4x^2 - 8x + 1 (rank 2, trivial torsion).
inline std::vector<CurvePoint<Rat>> rank2_points() {
  using P = CurvePoint<Rat>;
  return {P::affine(0, 1),  P::affine(0, -1), P::affine(1, 1),  P::affine(1, -1), P::affine(-2, 1),
          P::affine(-2, -1), P::affine(-1, 3), P::affine(-1, -3), P::affine(3, 11), P::affine(3, -11),
          P::affine(4, 17), P::affine(4, -17), P::affine(6, 31), P::affine(6, -31)};
}

inline Poly<Rat> rank2_f() { return qpoly({1, -8, 4, 4}); }

/// y^2 = x^5 - x + 1 over Q, genus 2, with six small affine points.
inline Poly<Rat> genus2_f() { return qpoly({1, -1, 0, 0, 0, 1}); }
inline std::vector<CurvePoint<Rat>> genus2_points() {
  using P = CurvePoint<Rat>;
  return {P::affine(0, 1), P::affine(0, -1), P::affine(1, 1), P::affine(1, -1), P::affine(-1, 1), P::affine(-1, -1)};
}

/// y^2 = x^7 - x + 1 over Q, genus 3.
inline Poly<Rat> genus3_f() { return qpoly({1, -1, 0, 0, 0, 0, 0, 1}); }
inline std::vector<CurvePoint<Rat>> genus3_points() {
  using P = CurvePoint<Rat>;
  return {P::affine(0, 1), P::affine(0, -1), P::affine(1, 1), P::affine(1, -1), P::affine(-1, 1), P::affine(-1, -1)};
}

}  // namespace gjac::test
