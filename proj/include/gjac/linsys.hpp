#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gjac/curve.hpp"
#include "gjac/error.hpp"
#include "gjac/jacobian.hpp"
#include "gjac/local.hpp"
#include "gjac/poly.hpp"

namespace gjac {

/// Formal sum of rational points with nonzero integer multiplicities.
template <FieldElement K>
class Divisor {
 public:
  using Point = CurvePoint<K>;

  Divisor() = default;

  static Divisor of(std::initializer_list<std::pair<Point, int>> terms) {
    Divisor d;
    for (const auto& [P, m] : terms) d.add(P, m);
    return d;
  }

  void add(const Point& P, int m) {
    if (m == 0) return;
    const int r = (terms_[P] += m);
    if (r == 0) terms_.erase(P);
  }

  Divisor operator+(const Divisor& o) const {
    Divisor r = *this;
    for (const auto& [P, m] : o.terms_) r.add(P, m);
    return r;
  }
  Divisor operator-() const {
    Divisor r;
    for (const auto& [P, m] : terms_) r.add(P, -m);
    return r;
  }
  Divisor operator-(const Divisor& o) const { return *this + (-o); }

  int degree() const {
    int d = 0;
    for (const auto& [P, m] : terms_) d += m;
    return d;
  }
  int multiplicity(const Point& P) const {
    auto it = terms_.find(P);
    return it == terms_.end() ? 0 : it->second;
  }
  const std::map<Point, int>& terms() const { return terms_; }
  bool operator==(const Divisor& o) const { return terms_ == o.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [P, m] : terms_) {
      if (!s.empty()) s += " + ";
      s += std::to_string(m) + "*" + P.to_string();
    }
    return s;
  }

 private:
  std::map<Point, int> terms_;
};

namespace detail {

/// Basis of the right nullspace { c : M c = 0 } of a dense matrix with
/// `cols` columns.
template <FieldElement K>
std::vector<std::vector<K>> nullspace(std::vector<std::vector<K>> m, std::size_t cols, const typename K::Field& F) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const K inv = m[r][c].inv();
    for (auto& a : m[r]) a = a * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const K s = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = m[i][k] - s * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<std::vector<K>> out;
  std::size_t pi = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pi < pivots.size() && pivots[pi] == free) {
      ++pi;
      continue;
    }
    std::vector<K> v(cols, F.zero());
    v[free] = F.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// Riemann-Roch spaces on an odd-degree model. Writing D = D+ - D- + n inf,
/// L(D) = { G / w : G in L(N inf), G vanishing on div(w)_aff - D+ + D- }
/// with w = prod (x - c)^{e_c} clearing the affine poles and N = n + 2 deg w.
template <FieldElement K>
class RiemannRoch {
 public:
  explicit RiemannRoch(HyperellipticCurve<K> curve) : C_(std::move(curve)) {
    if (!C_.odd_degree()) throw DomainError("Riemann-Roch spaces need an odd-degree model");
  }

  const HyperellipticCurve<K>& curve() const { return C_; }

  int dim(const Divisor<K>& D) const { return static_cast<int>(solve(D).size()); }

  std::vector<TrackedFunction<K>> basis(const Divisor<K>& D) const { return solve(D); }

  /// (2g - 2) inf
  Divisor<K> canonical() const {
    Divisor<K> d;
    d.add(CurvePoint<K>::infinity(), 2 * C_.genus() - 2);
    return d;
  }

 private:
  std::vector<TrackedFunction<K>> solve(const Divisor<K>& D) const {
    const auto F = C_.field();
    const int g = C_.genus();
    for (const auto& [P, m] : D.terms()) C_.require(P);
    if (D.degree() < 0) return {};

    // w clears the positive affine part; collect per x-coordinate.
    std::map<K, int> e;
    for (const auto& [P, m] : D.terms()) {
      if (!P.at_infinity && m > 0) e[P.x] += m;
    }
    Poly<K> w = Poly<K>::constant(F.one());
    int M = 0;
    for (const auto& [c, k] : e) {
      w *= Poly<K>::linear(c).pow(static_cast<unsigned>(k));
      M += k;
    }
    const int N = D.multiplicity(CurvePoint<K>::infinity()) + 2 * M;
    if (N < 0) return {};

    // Z = div(w)_aff - D_aff
    std::map<CurvePoint<K>, int> Z;
    for (const auto& [c, k] : e) {
      const auto y2 = C_.f()(c);
      const auto y = F.sqrt(y2);
      if (!y) throw DomainError("internal: pole fiber is not rational");
      if (y->is_zero()) {
        Z[CurvePoint<K>::affine(c, *y)] += 2 * k;
      } else {
        Z[CurvePoint<K>::affine(c, *y)] += k;
        Z[CurvePoint<K>::affine(c, -*y)] += k;
      }
    }
    for (const auto& [P, m] : D.terms()) {
      if (!P.at_infinity) Z[P] -= m;
    }

    std::vector<std::pair<int, int>> monomials;
    for (int i = 0; 2 * i <= N; ++i) monomials.emplace_back(i, 0);
    for (int i = 0; 2 * i + 2 * g + 1 <= N; ++i) monomials.emplace_back(i, 1);

    std::vector<std::vector<K>> rows;
    for (const auto& [P, m] : Z) {
      if (m <= 0) continue;
      const auto prec = static_cast<std::size_t>(m);
      const auto le = local_expansion(C_, P, prec);
      std::vector<Series<K>> cols;
      for (const auto& [i, ey] : monomials) {
        Series<K> s(prec, F.zero());
        s[0] = F.one();
        for (int t = 0; t < i; ++t) s = detail::series_mul(s, le.x, prec, F);
        if (ey == 1) s = detail::series_mul(s, le.y, prec, F);
        cols.push_back(std::move(s));
      }
      for (std::size_t t = 0; t < prec; ++t) {
        std::vector<K> row;
        row.reserve(cols.size());
        for (const auto& s : cols) row.push_back(s[t]);
        rows.push_back(std::move(row));
      }
    }

    std::vector<TrackedFunction<K>> out;
    for (const auto& v : detail::nullspace(rows, monomials.size(), F)) {
      std::vector<K> a, b;
      for (std::size_t j = 0; j < monomials.size(); ++j) {
        auto& dst = monomials[j].second == 0 ? a : b;
        const auto idx = static_cast<std::size_t>(monomials[j].first);
        if (dst.size() <= idx) dst.resize(idx + 1, F.zero());
        dst[idx] = v[j];
      }
      out.push_back(TrackedFunction<K>{Poly<K>(F, a), Poly<K>(F, b), w});
    }
    return out;
  }

  HyperellipticCurve<K> C_;
};

template <FieldElement K>
struct KempfReport {
  bool obstructed = false;
  int l_k_minus_x_minus_z = 0;
  int l_x_plus_z = 0;
  int genus = 0;
  std::string note;
};

/// Whether |K - x - z| is nonempty. A general curve is hyperelliptic only
/// for g <= 2, so for g >= 3 the report is informational for the given
/// curve and is marked as such in the note.
template <FieldElement K>
KempfReport<K> kempf_obstructed(const RiemannRoch<K>& rr, const CurvePoint<K>& x, const CurvePoint<K>& z) {
  if (x == z) throw DomainError("kempf: the two points must be distinct");
  Divisor<K> xz;
  xz.add(x, 1);
  xz.add(z, 1);
  KempfReport<K> r;
  r.genus = rr.curve().genus();
  r.l_k_minus_x_minus_z = rr.dim(rr.canonical() - xz);
  r.l_x_plus_z = rr.dim(xz);
  r.obstructed = r.l_k_minus_x_minus_z > 0;
  r.note = r.genus <= 2 ? "general-moduli argument applies" : "curve-specific, informational only";
  return r;
}

/// (h1 - 1)(h2 - 1) + k1 h1 + k2 h2
long long csi_bound(long long h1, long long k1, long long h2, long long k2);

}  // namespace gjac
