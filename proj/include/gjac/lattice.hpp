#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace gjac {

using IntVec = std::vector<mpz_class>;
using IntMatrix = std::vector<IntVec>;

/// Row-style Hermite normal form of the row span of `rows`: echelon form
/// with positive pivots, entries above each pivot reduced into [0, pivot),
/// zero rows removed.
IntMatrix hnf(const IntMatrix& rows, std::size_t ncols);

/// Sublattice of Z^n stored by its (unique) HNF basis.
class IntLattice {
 public:
  explicit IntLattice(std::size_t ambient) : ambient_(ambient) {}
  IntLattice(const IntMatrix& generators, std::size_t ambient);

  static IntLattice full(std::size_t ambient);
  /// m * Z^n
  static IntLattice scaled_full(std::size_t ambient, const mpz_class& m);

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(const IntVec& v) const;
  /// gcd of all basis entries (0 for the zero lattice).
  mpz_class content() const;
  /// Absolute determinant for full-rank lattices (index in Z^n).
  mpz_class index() const;

  bool operator==(const IntLattice& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

  std::string to_string() const;

 private:
  std::size_t ambient_;
  IntMatrix basis_;
};

/// Intersection via the kernel of the stacked bases [[A, A], [B, 0]].
IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b);

/// { w : m * w in L }
IntLattice lattice_divide(const IntLattice& lattice, const mpz_class& m);

/// Image of the lattice under v -> v * T for an integer matrix T (rows of
/// the result are b_i * T).
IntLattice lattice_transform(const IntLattice& lattice, const IntMatrix& t);

/// LLL-reduced basis (delta = 3/4), exact rational Gram-Schmidt.
IntMatrix lll_reduce(const IntMatrix& basis);

std::string format_vector(const IntVec& v);

}  // namespace gjac
