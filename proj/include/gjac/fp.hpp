#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "gjac/error.hpp"

namespace gjac {

class Fp;

/// Prime field F_p for an odd machine-word prime p.
struct PrimeField {
  std::uint64_t p = 3;

  using Element = Fp;

  Fp zero() const;
  Fp one() const;
  Fp from_int(long long n) const;
  Fp from_mpz(const mpz_class& n) const;

  static constexpr bool is_finite() { return true; }
  std::uint64_t characteristic() const { return p; }
  std::uint64_t size() const { return p; }
  /// The i-th element in the canonical order 0, 1, ..., p-1.
  Fp element(std::uint64_t i) const;
  /// Square root if one exists (Tonelli-Shanks); the smaller root is returned.
  std::optional<Fp> sqrt(const Fp& a) const;
  std::string name() const { return "F" + std::to_string(p); }

  bool operator==(const PrimeField&) const = default;
};

/// Element of F_p. Each element carries its modulus so that arithmetic is
/// context-free; mixing moduli is a programming error.
class Fp {
 public:
  using Field = PrimeField;

  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  PrimeField field() const { return PrimeField{p_}; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp operator+(const Fp& o) const {
    std::uint64_t s = v_ + o.v_;
    if (s >= p_ || s < v_) s -= p_;
    return raw(s, p_);
  }
  Fp operator-(const Fp& o) const { return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + (p_ - o.v_), p_); }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp operator*(const Fp& o) const {
    const auto prod = static_cast<unsigned __int128>(v_) * o.v_;
    return raw(static_cast<std::uint64_t>(prod % p_), p_);
  }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  Fp pow(std::uint64_t e) const {
    Fp base = *this;
    Fp acc = raw(1 % p_, p_);
    while (e != 0) {
      if (e & 1U) acc *= base;
      base *= base;
      e >>= 1U;
    }
    return acc;
  }

  Fp inv() const {
    if (v_ == 0) throw DomainError("division by zero in F_" + std::to_string(p_));
    // extended Euclid on signed 128-bit values
    __int128 t = 0, new_t = 1;
    __int128 r = p_, new_r = v_;
    while (new_r != 0) {
      const __int128 q = r / new_r;
      const __int128 tt = t - q * new_t;
      t = new_t;
      new_t = tt;
      const __int128 rr = r - q * new_r;
      r = new_r;
      new_r = rr;
    }
    if (t < 0) t += p_;
    return raw(static_cast<std::uint64_t>(t), p_);
  }

  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  std::strong_ordering operator<=>(const Fp& o) const { return v_ <=> o.v_; }

  std::string to_string() const { return std::to_string(v_); }

 private:
  static Fp raw(std::uint64_t v, std::uint64_t p) {
    Fp r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

inline Fp PrimeField::zero() const { return Fp(0, p); }
inline Fp PrimeField::one() const { return Fp(1, p); }
inline Fp PrimeField::element(std::uint64_t i) const { return Fp(i, p); }

inline Fp PrimeField::from_int(long long n) const {
  const auto pp = static_cast<long long>(p);
  long long r = n % pp;
  if (r < 0) r += pp;
  return Fp(static_cast<std::uint64_t>(r), p);
}

inline Fp PrimeField::from_mpz(const mpz_class& n) const {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return Fp(mpz_fdiv_ui(n.get_mpz_t(), p), p);
}

inline std::optional<Fp> PrimeField::sqrt(const Fp& a) const {
  if (a.is_zero()) return a;
  if (a.pow((p - 1) / 2) != one()) return std::nullopt;
  // Tonelli-Shanks
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  Fp z = from_int(2);
  while (z.pow((p - 1) / 2) == one()) z += one();
  Fp c = z.pow(q);
  Fp x = a.pow((q + 1) / 2);
  Fp t = a.pow(q);
  unsigned m = s;
  while (!t.is_one()) {
    unsigned i = 0;
    Fp t2 = t;
    while (!t2.is_one()) {
      t2 *= t2;
      ++i;
    }
    Fp b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b *= b;
    x *= b;
    c = b * b;
    t *= c;
    m = i;
  }
  const Fp other = -x;
  return other.value() < x.value() ? other : x;
}

}  // namespace gjac
