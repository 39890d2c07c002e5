#include "gjac/curve.hpp"

namespace gjac::detail {

std::vector<mpz_class> mpz_divisors(const mpz_class& n) {
  if (n == 0) throw DomainError("divisors of zero");
  mpz_class m = abs(n);
  std::vector<std::pair<mpz_class, unsigned>> fac;
  for (mpz_class p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (p > 1000000) {
      if (mpz_probab_prime_p(m.get_mpz_t(), 30) == 0) {
        throw GuardError("rational roots: cannot factor coefficient " + n.get_str());
      }
      break;
    }
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) fac.emplace_back(p, e);
  }
  if (m > 1) fac.emplace_back(m, 1);
  std::vector<mpz_class> ds{1};
  for (const auto& [p, e] : fac) {
    const std::size_t base = ds.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

}  // namespace gjac::detail
