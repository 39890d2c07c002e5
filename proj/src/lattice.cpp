#include "gjac/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "gjac/error.hpp"

namespace gjac {

namespace {

bool is_zero_row(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& a) { return a == 0; });
}

void axpy(IntVec& dst, const mpz_class& q, const IntVec& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= q * src[i];
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

IntMatrix hnf(const IntMatrix& rows, std::size_t ncols) {
  IntMatrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != ncols) throw DomainError("hnf: row length mismatch");
    if (!is_zero_row(r)) m.push_back(r);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    while (true) {
      std::size_t best = m.size();
      for (std::size_t i = r; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        if (best == m.size() || abs(m[i][c]) < abs(m[best][c])) best = i;
      }
      if (best == m.size()) break;
      std::swap(m[r], m[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        axpy(m[i], floor_div(m[i][c], m[r][c]), m[r]);
        if (m[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0) {
      for (auto& a : m[r]) a = -a;
    }
    for (std::size_t i = 0; i < r; ++i) axpy(m[i], floor_div(m[i][c], m[r][c]), m[r]);
    ++r;
  }
  m.resize(r);
  return m;
}

IntLattice::IntLattice(const IntMatrix& generators, std::size_t ambient)
    : ambient_(ambient), basis_(hnf(generators, ambient)) {}

IntLattice IntLattice::full(std::size_t ambient) { return scaled_full(ambient, 1); }

IntLattice IntLattice::scaled_full(std::size_t ambient, const mpz_class& m) {
  IntMatrix rows(ambient, IntVec(ambient, 0));
  for (std::size_t i = 0; i < ambient; ++i) rows[i][i] = m;
  return IntLattice(rows, ambient);
}

bool IntLattice::contains(const IntVec& v) const {
  if (v.size() != ambient_) return false;
  IntVec w = v;
  for (const auto& row : basis_) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    if (w[c] % row[c] != 0) return false;
    axpy(w, w[c] / row[c], row);
  }
  return is_zero_row(w);
}

mpz_class IntLattice::content() const {
  mpz_class g = 0;
  for (const auto& row : basis_) {
    for (const auto& a : row) g = gcd(g, a);
  }
  return g;
}

mpz_class IntLattice::index() const {
  if (rank() != ambient_) return 0;
  mpz_class d = 1;
  for (std::size_t i = 0; i < basis_.size(); ++i) d *= basis_[i][i];
  return abs(d);
}

std::string IntLattice::to_string() const {
  if (basis_.empty()) return "{0}";
  std::ostringstream os;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i != 0) os << " ";
    os << format_vector(basis_[i]);
  }
  return os.str();
}

IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b) {
  if (a.ambient() != b.ambient()) throw DomainError("lattice_intersect: ambient rank mismatch");
  const std::size_t n = a.ambient();
  IntMatrix stacked;
  for (const auto& row : a.basis()) {
    IntVec r(2 * n);
    for (std::size_t i = 0; i < n; ++i) r[i] = r[n + i] = row[i];
    stacked.push_back(std::move(r));
  }
  for (const auto& row : b.basis()) {
    IntVec r(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) r[i] = row[i];
    stacked.push_back(std::move(r));
  }
  const IntMatrix h = hnf(stacked, 2 * n);
  IntMatrix kernel;
  for (const auto& row : h) {
    const bool head_zero = std::all_of(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n),
                                       [](const mpz_class& x) { return x == 0; });
    if (head_zero) kernel.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(n), row.end());
  }
  return IntLattice(kernel, n);
}

IntLattice lattice_divide(const IntLattice& lattice, const mpz_class& m) {
  if (m <= 0) throw DomainError("lattice_divide: non-positive divisor");
  const IntLattice meet = lattice_intersect(lattice, IntLattice::scaled_full(lattice.ambient(), m));
  IntMatrix rows = meet.basis();
  for (auto& row : rows) {
    for (auto& a : row) a /= m;
  }
  return IntLattice(rows, lattice.ambient());
}

IntLattice lattice_transform(const IntLattice& lattice, const IntMatrix& t) {
  if (t.size() != lattice.ambient()) throw DomainError("lattice_transform: shape mismatch");
  const std::size_t out = t.empty() ? 0 : t.front().size();
  IntMatrix rows;
  for (const auto& b : lattice.basis()) {
    IntVec r(out, 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < out; ++j) r[j] += b[i] * t[i][j];
    }
    rows.push_back(std::move(r));
  }
  return IntLattice(rows, out);
}

namespace {

struct GramSchmidt {
  std::vector<std::vector<mpq_class>> star;
  std::vector<mpq_class> norm2;
  std::vector<std::vector<mpq_class>> mu;
};

GramSchmidt gram_schmidt(const IntMatrix& b) {
  const std::size_t n = b.size();
  const std::size_t d = n == 0 ? 0 : b[0].size();
  GramSchmidt gs;
  gs.star.assign(n, std::vector<mpq_class>(d));
  gs.norm2.assign(n, 0);
  gs.mu.assign(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) gs.star[i][k] = b[i][k];
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class dot = 0;
      for (std::size_t k = 0; k < d; ++k) dot += mpq_class(b[i][k]) * gs.star[j][k];
      gs.mu[i][j] = dot / gs.norm2[j];
      for (std::size_t k = 0; k < d; ++k) gs.star[i][k] -= gs.mu[i][j] * gs.star[j][k];
    }
    for (std::size_t k = 0; k < d; ++k) gs.norm2[i] += gs.star[i][k] * gs.star[i][k];
    if (gs.norm2[i] == 0) throw DomainError("lll_reduce: dependent basis");
  }
  return gs;
}

mpz_class round_nearest(const mpq_class& q) {
  // floor(q + 1/2)
  mpq_class h = q + mpq_class(1, 2);
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return r;
}

}  // namespace

IntMatrix lll_reduce(const IntMatrix& basis) {
  IntMatrix b = basis;
  const std::size_t n = b.size();
  if (n <= 1) return b;
  const mpq_class delta(3, 4);
  std::size_t k = 1;
  GramSchmidt gs = gram_schmidt(b);
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      const mpz_class q = round_nearest(gs.mu[k][jj]);
      if (q != 0) {
        axpy(b[k], q, b[jj]);
        gs = gram_schmidt(b);
      }
    }
    const mpq_class lhs = gs.norm2[k];
    const mpq_class rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gs = gram_schmidt(b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return b;
}

std::string format_vector(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

}  // namespace gjac
