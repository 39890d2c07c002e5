#pragma once

#include <string>
#include <vector>

#include "gjac/decide.hpp"

namespace gjac {

struct ConstructOptions {
  PrimeBudget budget;
  bool backtrack = false;
  /// Cap on relation-lattice certifications per search.
  std::size_t max_certifications = 20000;
};

struct ConstructResult {
  /// Fibers as indices into the supplied point list.
  std::vector<std::vector<std::size_t>> fibers;
  QSpec spec;
  AntiAffineVerdict verdict;
  /// Genus < 4: the curve is hyperelliptic and outside the range where
  /// existence is known; the certificate itself is unconditional.
  bool low_genus = false;
  std::vector<std::string> transcript;
};

/// No certified extension was found; carries the deepest certified partial
/// selection.
class ExhaustionError : public Error {
 public:
  ExhaustionError(const std::string& msg, std::vector<std::vector<std::size_t>> partial,
                  std::vector<std::string> transcript)
      : Error(msg), partial_(std::move(partial)), transcript_(std::move(transcript)) {}

  const std::vector<std::vector<std::size_t>>& partial() const { return partial_; }
  const std::vector<std::string>& transcript() const { return transcript_; }

 private:
  std::vector<std::vector<std::size_t>> partial_;
  std::vector<std::string> transcript_;
};

/// n disjoint pairs of the given points whose difference classes are
/// certified independent.
ConstructResult select_nodal(const HyperellipticCurve<Rat>& C, const std::vector<CurvePoint<Rat>>& points, int n,
                             const ConstructOptions& opts = {});

/// Fibers of sizes d_1, ..., d_n, grown one branch at a time with the full
/// class set re-certified after every addition.
ConstructResult select_ordinary(const HyperellipticCurve<Rat>& C, const std::vector<CurvePoint<Rat>>& points,
                                const std::vector<int>& profile, const ConstructOptions& opts = {});

}  // namespace gjac
