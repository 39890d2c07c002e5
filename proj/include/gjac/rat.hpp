#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>

#include "gjac/error.hpp"

namespace gjac {

class Rat;

/// The rational numbers.
struct RationalField {
  using Element = Rat;

  Rat zero() const;
  Rat one() const;
  Rat from_int(long long n) const;
  Rat from_mpz(const mpz_class& n) const;

  static constexpr bool is_finite() { return false; }
  std::uint64_t characteristic() const { return 0; }
  /// Exact square root when both numerator and denominator are squares.
  std::optional<Rat> sqrt(const Rat& a) const;
  std::string name() const { return "Q"; }

  bool operator==(const RationalField&) const = default;
};

/// Arbitrary-precision rational in lowest terms with positive denominator.
class Rat {
 public:
  using Field = RationalField;

  Rat() = default;
  Rat(long long n) : q_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rat(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_.canonicalize();
  }

  const mpq_class& value() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  RationalField field() const { return {}; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rat operator+(const Rat& o) const { return Rat(mpq_class(q_ + o.q_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(q_ - o.q_)); }
  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(q_ * o.q_)); }
  Rat operator/(const Rat& o) const {
    if (o.is_zero()) throw DomainError("division by zero in Q");
    return Rat(mpq_class(q_ / o.q_));
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  Rat inv() const {
    if (is_zero()) throw DomainError("division by zero in Q");
    return Rat(mpq_class(1 / q_));
  }

  Rat pow(unsigned long e) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
    return Rat(n, d);
  }

  bool operator==(const Rat& o) const { return q_ == o.q_; }
  std::strong_ordering operator<=>(const Rat& o) const {
    const int c = cmp(q_, o.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const { return q_.get_str(); }

  /// Bit size of numerator plus denominator; used for growth guards.
  std::size_t bits() const {
    return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
  }

 private:
  mpq_class q_{0};
};

inline Rat RationalField::zero() const { return Rat(0); }
inline Rat RationalField::one() const { return Rat(1); }
inline Rat RationalField::from_int(long long n) const { return Rat(n); }
inline Rat RationalField::from_mpz(const mpz_class& n) const { return Rat(n, mpz_class(1)); }

inline std::optional<Rat> RationalField::sqrt(const Rat& a) const {
  if (a.value() < 0) return std::nullopt;
  const mpz_class n = a.num();
  const mpz_class d = a.den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rat(rn, rd);
}

}  // namespace gjac
