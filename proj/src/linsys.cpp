#include "gjac/linsys.hpp"

namespace gjac {

long long csi_bound(long long h1, long long k1, long long h2, long long k2) {
  if (h1 < 1 || h2 < 1) throw DomainError("csi: cover degrees must be at least 1");
  if (k1 < 0 || k2 < 0) throw DomainError("csi: genera must be nonnegative");
  return (h1 - 1) * (h2 - 1) + k1 * h1 + k2 * h2;
}

}  // namespace gjac
