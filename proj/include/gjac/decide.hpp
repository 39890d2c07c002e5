#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gjac/genjac.hpp"
#include "gjac/jacobian.hpp"
#include "gjac/lattice.hpp"

namespace gjac {

using QClass = MumfordClass<Rat>;
using QSpec = SingularCurveSpec<Rat>;

/// Budget for the prime search: at most `primes` good primes below `limit`.
struct PrimeBudget {
  std::size_t primes = 8;
  std::uint64_t limit = 200;
};

/// Coefficient-wise reduction; nullopt if some denominator vanishes mod p.
std::optional<Poly<Fp>> reduce_mod(const Poly<Rat>& f, std::uint64_t p);

/// Odd p with f p-integral, of the same degree and squarefree mod p.
bool is_good_prime(const HyperellipticCurve<Rat>& C, std::uint64_t p);

std::vector<std::uint64_t> good_primes(const HyperellipticCurve<Rat>& C, const PrimeBudget& budget);

/// Reduction of a class at a good prime, if u and v are p-integral.
std::optional<MumfordClass<Fp>> reduce_class(const QClass& a, const Jacobian<Fp>& Jp);

/// sum k_i a_i, exactly.
QClass combine(const Jacobian<Rat>& J, const std::vector<QClass>& classes, const IntVec& k);

struct TorsionVerdict {
  enum class Status { TorsionOfOrder, NotTorsion, Undecided };
  Status status = Status::Undecided;
  std::uint64_t order = 0;
  mpz_class bound;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> reduction_orders;
  std::vector<std::string> transcript;

  std::string status_string() const;
  std::string report() const;
};

/// Certified torsion test over Q from the orders of two good reductions.
TorsionVerdict is_torsion_q(const Jacobian<Rat>& J, const QClass& a, const PrimeBudget& budget = {});

struct RelationVerdict {
  enum class Status { Independent, Dependent, Undecided };
  Status status = Status::Undecided;
  /// Relations verified exactly over Q (zero lattice unless Dependent).
  IntLattice lattice{0};
  /// Intersection of the relation lattices of the reductions.
  IntLattice candidates{0};
  mpz_class torsion_bound;
  std::vector<std::uint64_t> primes;
  std::vector<std::string> transcript;

  std::string status_string() const;
  std::string report() const;
};

/// Relation lattice of the classes, certified through reductions mod p.
///
/// Independence certificate: with B* the torsion bound of the subgroup
/// generated by the classes (from two primes), a nonzero relation c k0
/// (k0 primitive) gives B* k0 in every reduction lattice, so k0 lies in
/// { w : B* w in M }. If that lattice has content > 1 it has no primitive
/// vector and the classes are independent.
RelationVerdict relation_lattice(const Jacobian<Rat>& J, const std::vector<QClass>& classes,
                                 const PrimeBudget& budget = {});

/// [x_ij - x_i1] for each fiber i and j >= 2, in fiber order.
std::vector<QClass> difference_classes(const QSpec& spec);
std::vector<std::string> difference_labels(const QSpec& spec);

struct AntiAffineVerdict {
  enum class Answer { True, False, Undecided };
  Answer answer = Answer::Undecided;
  std::vector<QClass> classes;
  std::vector<std::string> labels;
  RelationVerdict relations;
  std::optional<IntVec> certificate;

  std::string answer_string() const;
  std::string report() const;
};

AntiAffineVerdict is_anti_affine(const QSpec& spec, const PrimeBudget& budget = {});

/// Always rejected: every class over a finite field is torsion.
[[noreturn]] void is_anti_affine(const SingularCurveSpec<Fp>& spec, const PrimeBudget& budget = {});

/// 1 iff sum k_ij [x_ij - x_i1] is the identity.
int graded_dim(const QSpec& spec, const IntVec& k);

struct GradedBox {
  long bound = 0;
  std::uint64_t count = 0;
  std::vector<IntVec> trivial;  // lexicographic order
};

/// Graded dimensions over the box [-B, B]^t.
GradedBox graded_box(const QSpec& spec, long bound);

struct AnchorCheck {
  bool invariant = true;
  std::vector<std::string> transcript;
};

/// Recomputes the verdict for every anchor choice (product over fibers)
/// and checks that certified relations transport between anchors.
AnchorCheck basepoint_invariance_check(const QSpec& spec, const PrimeBudget& budget = {});

/// The spec with fiber i re-anchored at branch anchors[i].
QSpec with_anchors(const QSpec& spec, const std::vector<std::size_t>& anchors);

/// Matrix taking relation vectors for `with_anchors(spec, anchors)` to
/// relation vectors for `spec` (row vectors, v -> v T).
IntMatrix anchor_transform(const QSpec& spec, const std::vector<std::size_t>& anchors);

}  // namespace gjac
