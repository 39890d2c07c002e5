#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gjac/error.hpp"
#include "gjac/field.hpp"

namespace gjac {

/// Dense univariate polynomial over an exact field, coefficients in
/// ascending degree with trailing zeros stripped.
template <FieldElement K>
class Poly {
 public:
  using Field = typename K::Field;

  explicit Poly(Field field) : field_(field) {}
  Poly(Field field, std::vector<K> coeffs) : field_(field), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const K& c) { return Poly(c.field(), {c}); }
  static Poly x(Field field) { return Poly(field, {field.zero(), field.one()}); }
  static Poly monomial(const K& c, int degree) {
    std::vector<K> v(static_cast<std::size_t>(degree) + 1, c.field().zero());
    v.back() = c;
    return Poly(c.field(), std::move(v));
  }
  /// x - a
  static Poly linear(const K& a) { return Poly(a.field(), {-a, a.field().one()}); }

  const Field& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == field_.one(); }
  const std::vector<K>& coeffs() const { return c_; }

  K coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : field_.zero();
  }
  K lc() const { return c_.empty() ? field_.zero() : c_.back(); }

  Poly monic() const {
    if (is_zero()) return *this;
    const K inv = lc().inv();
    return scaled(inv);
  }

  Poly scaled(const K& s) const {
    if (s.is_zero()) return Poly(field_);
    std::vector<K> v = c_;
    for (auto& a : v) a = a * s;
    return Poly(field_, std::move(v));
  }

  K operator()(const K& x) const {
    K acc = field_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(field_);
    std::vector<K> v;
    v.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * field_.from_int(static_cast<long long>(i)));
    return Poly(field_, std::move(v));
  }

  /// p(x + a)
  Poly shifted(const K& a) const {
    std::vector<K> v = c_;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j > i; --j) v[j - 1] = v[j - 1] + a * v[j];
    }
    return Poly(field_, std::move(v));
  }

  Poly operator+(const Poly& o) const {
    std::vector<K> v(std::max(c_.size(), o.c_.size()), field_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] = v[i] + o.c_[i];
    return Poly(field_, std::move(v));
  }
  Poly operator-() const {
    std::vector<K> v = c_;
    for (auto& a : v) a = -a;
    return Poly(field_, std::move(v));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(field_);
    std::vector<K> v(c_.size() + o.c_.size() - 1, field_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] = v[i + j] + c_[i] * o.c_[j];
    }
    return Poly(field_, std::move(v));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(unsigned e) const {
    Poly acc = constant(field_.one());
    Poly base = *this;
    while (e != 0) {
      if (e & 1U) acc *= base;
      base *= base;
      e >>= 1U;
    }
    return acc;
  }

  /// Quotient and remainder with deg r < deg b.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    const Field f = a.field_;
    if (a.degree() < b.degree()) return {Poly(f), a};
    std::vector<K> r = a.c_;
    std::vector<K> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, f.zero());
    const K inv_lc = b.lc().inv();
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
      const K coef = r[static_cast<std::size_t>(i)] * inv_lc;
      q[static_cast<std::size_t>(i - db)] = coef;
      if (coef.is_zero()) continue;
      for (int j = 0; j <= db; ++j) {
        auto& slot = r[static_cast<std::size_t>(i - db + j)];
        slot = slot - coef * b.c_[static_cast<std::size_t>(j)];
      }
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
  }
  Poly operator/(const Poly& b) const { return divmod(*this, b).first; }
  Poly operator%(const Poly& b) const { return divmod(*this, b).second; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator<(const Poly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    return std::lexicographical_compare(c_.rbegin(), c_.rend(), o.c_.rbegin(), o.c_.rend());
  }

  /// Sparse "c*x^k" text, highest degree first, e.g. "x^5 - 3*x + 1".
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Field field_;
  std::vector<K> c_;
};

namespace detail {

inline mpz_class content_of(const std::vector<mpz_class>& v) {
  mpz_class g = 0;
  for (const auto& a : v) g = gcd(g, a);
  return g;
}

inline void strip(std::vector<mpz_class>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Primitive pseudo-remainder sequence on integer polynomials.
inline std::vector<mpz_class> integer_gcd(std::vector<mpz_class> a, std::vector<mpz_class> b) {
  auto primitive = [](std::vector<mpz_class>& v) {
    strip(v);
    if (v.empty()) return;
    mpz_class c = content_of(v);
    if (v.back() < 0) c = -c;
    for (auto& x : v) x /= c;
  };
  primitive(a);
  primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    // pseudo-remainder of a by b
    std::vector<mpz_class> r = a;
    const mpz_class lb = b.back();
    const std::size_t db = b.size() - 1;
    while (!r.empty() && r.size() - 1 >= db) {
      const mpz_class lr = r.back();
      const std::size_t shift = r.size() - 1 - db;
      for (auto& x : r) x *= lb;
      for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= lr * b[j];
      strip(r);
    }
    primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace detail

/// Monic greatest common divisor (zero if both inputs are zero). Over Q the
/// inputs are cleared of denominators and reduced by a primitive PRS.
template <FieldElement K>
Poly<K> gcd(const Poly<K>& a, const Poly<K>& b) {
  if constexpr (is_rational_v<K>) {
    auto to_int = [](const Poly<Rat>& p) {
      mpz_class l = 1;
      for (const auto& c : p.coeffs()) l = lcm(l, c.den());
      std::vector<mpz_class> v;
      v.reserve(p.coeffs().size());
      for (const auto& c : p.coeffs()) v.push_back(c.num() * (l / c.den()));
      return v;
    };
    const auto g = detail::integer_gcd(to_int(a), to_int(b));
    std::vector<Rat> coeffs;
    coeffs.reserve(g.size());
    for (const auto& c : g) coeffs.emplace_back(c, mpz_class(1));
    return Poly<Rat>(RationalField{}, std::move(coeffs)).monic();
  } else {
    Poly<K> x = a;
    Poly<K> y = b;
    while (!y.is_zero()) {
      Poly<K> r = x % y;
      x = std::move(y);
      y = std::move(r);
    }
    return x.monic();
  }
}

/// Extended gcd: (g, s, t) with s*a + t*b = g and g monic. If both inputs
/// are zero, g = 0 and s = t = 0.
template <FieldElement K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> xgcd(const Poly<K>& a, const Poly<K>& b) {
  const auto f = a.field();
  Poly<K> r0 = a, r1 = b;
  Poly<K> s0 = Poly<K>::constant(f.one()), s1(f);
  Poly<K> t0(f), t1 = Poly<K>::constant(f.one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, std::move(r));
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, Poly<K>(f), Poly<K>(f)};
  const K inv = r0.lc().inv();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// Resultant Res(a, b) via the Euclidean recurrence.
template <FieldElement K>
K resultant(Poly<K> a, Poly<K> b) {
  const auto f = a.field();
  if (a.is_zero() || b.is_zero()) return f.zero();
  K acc = f.one();
  while (true) {
    const int m = a.degree();
    const int n = b.degree();
    if (n == 0) {
      K p = f.one();
      for (int i = 0; i < m; ++i) p = p * b.lc();
      return acc * p;
    }
    Poly<K> r = a % b;
    if (r.is_zero()) return f.zero();
    if ((m * n) % 2 == 1) acc = -acc;
    for (int i = 0; i < m - r.degree(); ++i) acc = acc * b.lc();
    a = std::move(b);
    b = std::move(r);
  }
}

/// Discriminant (-1)^{n(n-1)/2} Res(f, f') / lc(f); equal to 1 in degree 1.
template <FieldElement K>
K discriminant(const Poly<K>& f) {
  const int n = f.degree();
  if (n < 1) throw DomainError("discriminant of a constant polynomial");
  K r = resultant(f, f.derivative()) / f.lc();
  if ((n * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

template <FieldElement K>
std::string Poly<K>::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    K c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    bool negative = false;
    if constexpr (is_rational_v<K>) {
      if (c.value() < 0) {
        negative = true;
        c = -c;
      }
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit = c == field_.one();
    if (i == 0) {
      os << c.to_string();
    } else {
      if (!unit) os << c.to_string() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace gjac
