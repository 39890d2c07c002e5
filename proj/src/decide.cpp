#include "gjac/decide.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "gjac/numtheory.hpp"

namespace gjac {

namespace {

constexpr std::size_t kClosureGuard = 1000000;
constexpr long kVerifyMax = 64;
constexpr std::uint64_t kExactOrderCap = 1000000;

std::string join(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

mpz_class to_mpz(std::uint64_t n) {
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return r;
}

mpz_class prime_part_mpz(mpz_class n, std::uint64_t p) {
  mpz_class r = 1;
  const mpz_class P = to_mpz(p);
  while (n != 0 && n % P == 0) {
    n /= P;
    r *= P;
  }
  return r;
}

/// Bound on the order of any torsion element whose reductions have orders
/// dividing e_p, from every pair of primes.
mpz_class torsion_bound(const std::vector<std::uint64_t>& primes, const std::vector<mpz_class>& exps) {
  mpz_class b = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
      const mpz_class x = exps[i] * prime_part_mpz(exps[j], primes[i]);
      const mpz_class y = exps[j] * prime_part_mpz(exps[i], primes[j]);
      b = gcd(b, gcd(x, y));
    }
  }
  return b;
}

long max_abs(const IntVec& v) {
  long m = 0;
  for (const auto& a : v) {
    const mpz_class b = abs(a);
    if (!b.fits_slong_p()) return -1;
    m = std::max(m, b.get_si());
  }
  return m;
}

IntVec primitive_sign(IntVec v) {
  // first nonzero entry positive
  for (const auto& a : v) {
    if (a == 0) continue;
    if (a < 0) {
      for (auto& b : v) b = -b;
    }
    break;
  }
  return v;
}

/// Relation lattice of the reduced classes by closure of the generated
/// subgroup; nullopt above the guard.
std::optional<IntLattice> closure_relations(const Jacobian<Fp>& Jp, const std::vector<MumfordClass<Fp>>& gens,
                                            std::size_t& size) {
  const std::size_t n = gens.size();
  std::map<MumfordClass<Fp>, std::vector<long>> seen;
  std::vector<MumfordClass<Fp>> queue{Jp.identity()};
  seen.emplace(Jp.identity(), std::vector<long>(n, 0));
  IntMatrix rels;
  IntLattice lat(n);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto g = queue[head];
    const auto vg = seen.at(g);
    for (std::size_t i = 0; i < n; ++i) {
      auto h = Jp.add(g, gens[i]);
      auto vh = vg;
      ++vh[i];
      auto it = seen.find(h);
      if (it == seen.end()) {
        if (seen.size() >= kClosureGuard) return std::nullopt;
        seen.emplace(h, vh);
        queue.push_back(std::move(h));
        continue;
      }
      IntVec r(n);
      for (std::size_t k = 0; k < n; ++k) r[k] = vh[k] - it->second[k];
      if (!lat.contains(r)) {
        rels.push_back(std::move(r));
        lat = IntLattice(rels, n);
      }
    }
  }
  size = seen.size();
  return lat;
}

}  // namespace

std::optional<Poly<Fp>> reduce_mod(const Poly<Rat>& f, std::uint64_t p) {
  const PrimeField F{p};
  const mpz_class P = to_mpz(p);
  std::vector<Fp> c;
  for (const auto& a : f.coeffs()) {
    if (a.den() % P == 0) return std::nullopt;
    c.push_back(F.from_mpz(a.num()) / F.from_mpz(a.den()));
  }
  return Poly<Fp>(F, c);
}

bool is_good_prime(const HyperellipticCurve<Rat>& C, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) return false;
  const auto f = reduce_mod(C.f(), p);
  if (!f || f->degree() != C.f().degree()) return false;
  return gcd(*f, f->derivative()).is_one();
}

std::vector<std::uint64_t> good_primes(const HyperellipticCurve<Rat>& C, const PrimeBudget& budget) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; p < budget.limit && out.size() < budget.primes; p += 2) {
    if (is_good_prime(C, p)) out.push_back(p);
  }
  return out;
}

std::optional<MumfordClass<Fp>> reduce_class(const QClass& a, const Jacobian<Fp>& Jp) {
  const auto p = Jp.field().characteristic();
  auto u = reduce_mod(a.u, p);
  auto v = reduce_mod(a.v, p);
  if (!u || !v) return std::nullopt;
  MumfordClass<Fp> c{*u, *v};
  if (!Jp.is_valid(c)) return std::nullopt;
  return c;
}

QClass combine(const Jacobian<Rat>& J, const std::vector<QClass>& classes, const IntVec& k) {
  if (k.size() != classes.size()) throw DomainError("combine: length mismatch");
  QClass acc = J.identity();
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    acc = J.add(acc, J.smul_mpz(k[i], classes[i]));
  }
  return acc;
}

namespace {

MumfordClass<Fp> combine_fp(const Jacobian<Fp>& J, const std::vector<MumfordClass<Fp>>& classes, const IntVec& k) {
  MumfordClass<Fp> acc = J.identity();
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    acc = J.add(acc, J.smul_mpz(k[i], classes[i]));
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------- torsion

std::string TorsionVerdict::status_string() const {
  switch (status) {
    case Status::TorsionOfOrder:
      return "TorsionOfOrder(" + std::to_string(order) + ")";
    case Status::NotTorsion:
      return "NotTorsion";
    case Status::Undecided:
      break;
  }
  return "Undecided";
}

std::string TorsionVerdict::report() const {
  std::ostringstream os;
  os << "status: " << status_string() << "\n";
  os << "primes: " << join(primes) << "\n";
  os << "reduction orders: " << join(reduction_orders) << "\n";
  os << "order bound: " << bound.get_str() << "\n";
  for (const auto& t : transcript) os << t << "\n";
  return os.str();
}

TorsionVerdict is_torsion_q(const Jacobian<Rat>& J, const QClass& a, const PrimeBudget& budget) {
  if (!J.is_valid(a)) throw DomainError("is_torsion_q: invalid Mumford class");
  TorsionVerdict v;
  if (a.is_identity()) {
    v.status = TorsionVerdict::Status::TorsionOfOrder;
    v.order = 1;
    v.bound = 1;
    v.transcript.push_back("identity class");
    return v;
  }
  std::vector<mpz_class> orders;
  for (auto p : good_primes(J.curve(), budget)) {
    Jacobian<Fp> Jp(HyperellipticCurve<Fp>(*reduce_mod(J.curve().f(), p)));
    const auto ap = reduce_class(a, Jp);
    if (!ap) {
      v.transcript.push_back("p=" + std::to_string(p) + ": class not p-integral, skipped");
      continue;
    }
    const auto n = Jp.order(*ap);
    v.primes.push_back(p);
    v.reduction_orders.push_back(n);
    orders.push_back(to_mpz(n));
    if (v.primes.size() == 2) break;
  }
  if (v.primes.size() < 2) throw DomainError("is_torsion_q: fewer than two usable good primes within the budget");

  v.bound = torsion_bound(v.primes, orders);
  // A torsion order n is a multiple of every reduction order and divides B.
  const std::uint64_t L = lcm_u64(v.reduction_orders[0], v.reduction_orders[1]);
  std::vector<std::uint64_t> candidates;
  if (v.bound % to_mpz(L) == 0) {
    const mpz_class q = v.bound / to_mpz(L);
    if (!q.fits_ulong_p() || q.get_ui() > kExactOrderCap) {
      v.transcript.push_back("candidate set too large for exact verification");
      return v;
    }
    for (auto d : divisors(q.get_ui())) candidates.push_back(L * d);
  }
  for (auto n : candidates) {
    if (n > kExactOrderCap) {
      v.transcript.push_back("candidate " + std::to_string(n) + " above the exact verification cap");
      return v;
    }
    if (J.smul(static_cast<long long>(n), a).is_identity()) {
      v.transcript.push_back("verify: " + std::to_string(n) + "*a = 0 over Q");
      for (auto d : divisors(n)) {
        if (d == n) continue;
        if (J.smul(static_cast<long long>(d), a).is_identity()) {
          throw DomainError("internal: smaller multiple kills a torsion candidate");
        }
        v.transcript.push_back("verify: " + std::to_string(d) + "*a != 0 over Q");
      }
      v.status = TorsionVerdict::Status::TorsionOfOrder;
      v.order = n;
      return v;
    }
    v.transcript.push_back("verify: " + std::to_string(n) + "*a != 0 over Q");
  }
  v.transcript.push_back("no multiple of lcm(n_p) = " + std::to_string(L) + " dividing the bound kills the class");
  v.status = TorsionVerdict::Status::NotTorsion;
  return v;
}

// -------------------------------------------------------------- relations

std::string RelationVerdict::status_string() const {
  switch (status) {
    case Status::Independent:
      return "Independent";
    case Status::Dependent:
      return "Dependent";
    case Status::Undecided:
      break;
  }
  return "Undecided";
}

std::string RelationVerdict::report() const {
  std::ostringstream os;
  os << "status: " << status_string() << "\n";
  os << "primes: " << join(primes) << "\n";
  os << "candidate lattice: " << candidates.to_string() << "\n";
  os << "torsion bound: " << (torsion_bound == 0 ? std::string("n/a") : torsion_bound.get_str()) << "\n";
  os << "certified relations: " << lattice.to_string() << "\n";
  for (const auto& t : transcript) os << t << "\n";
  return os.str();
}

RelationVerdict relation_lattice(const Jacobian<Rat>& J, const std::vector<QClass>& classes,
                                 const PrimeBudget& budget) {
  if (classes.empty()) throw DomainError("relation_lattice: need at least one class");
  for (const auto& c : classes) {
    if (!J.is_valid(c)) throw DomainError("relation_lattice: invalid Mumford class " + c.to_string());
  }
  const std::size_t n = classes.size();
  const auto primes = good_primes(J.curve(), budget);
  if (primes.size() < 2) throw DomainError("relation_lattice: fewer than two good primes below the limit");

  RelationVerdict v;
  v.lattice = IntLattice(n);
  IntLattice M = IntLattice::full(n);
  std::vector<mpz_class> exps;
  std::set<IntVec> tried;
  IntMatrix verified;

  struct Reduction {
    std::uint64_t p;
    Jacobian<Fp> J;
    std::vector<MumfordClass<Fp>> classes;
  };
  std::vector<Reduction> reductions;
  for (auto p : primes) {
    Jacobian<Fp> Jp(HyperellipticCurve<Fp>(*reduce_mod(J.curve().f(), p)));
    std::vector<MumfordClass<Fp>> red;
    for (const auto& c : classes) {
      auto r = reduce_class(c, Jp);
      if (!r) break;
      red.push_back(std::move(*r));
    }
    if (red.size() != n) {
      v.transcript.push_back("p=" + std::to_string(p) + ": a class is not p-integral, skipped");
      continue;
    }
    reductions.push_back({p, std::move(Jp), std::move(red)});
  }
  // A relation over Q reduces to a relation at every good prime, so the
  // exact check only runs on candidates that vanish at all of them.
  auto first_nonvanishing = [&](const IntVec& b) -> std::uint64_t {
    for (const auto& R : reductions) {
      if (!combine_fp(R.J, R.classes, b).is_identity()) return R.p;
    }
    return 0;
  };

  for (auto& R : reductions) {
    const auto p = R.p;
    const auto& Jp = R.J;
    const auto& red = R.classes;
    std::size_t size = 0;
    const auto Lp = closure_relations(Jp, red, size);
    if (!Lp) {
      v.transcript.push_back("p=" + std::to_string(p) + ": subgroup above 10^6 elements, skipped");
      continue;
    }
    std::uint64_t e = 1;
    for (const auto& r : red) e = lcm_u64(e, Jp.order(r));
    v.primes.push_back(p);
    exps.push_back(to_mpz(e));
    M = lattice_intersect(M, *Lp);
    v.transcript.push_back("p=" + std::to_string(p) + ": subgroup size " + std::to_string(size) + ", exponent " +
                           std::to_string(e) + ", relations " + Lp->to_string());

    if (v.primes.size() >= 2) {
      v.torsion_bound = torsion_bound(v.primes, exps);
      const auto quotient = lattice_divide(M, v.torsion_bound);
      const auto c = quotient.content();
      if (c > 1) {
        v.candidates = M;
        v.status = RelationVerdict::Status::Independent;
        v.transcript.push_back("{w : " + v.torsion_bound.get_str() + " w in M} has content " + c.get_str() +
                               ": no primitive relation direction, independent");
        return v;
      }
    }

    for (auto b : lll_reduce(M.basis())) {
      b = primitive_sign(b);
      const long m = max_abs(b);
      if (m < 0 || m > kVerifyMax || !tried.insert(b).second) continue;
      if (const auto q = first_nonvanishing(b)) {
        v.transcript.push_back("verify " + format_vector(b) + ": nonzero mod " + std::to_string(q));
      } else if (combine(J, classes, b).is_identity()) {
        v.transcript.push_back("verify " + format_vector(b) + ": identity over Q");
        verified.push_back(b);
      } else {
        v.transcript.push_back("verify " + format_vector(b) + ": not the identity over Q");
      }
    }
    if (!verified.empty() && IntLattice(verified, n) == M) break;
  }
  v.candidates = M;
  if (!verified.empty()) {
    v.status = RelationVerdict::Status::Dependent;
    v.lattice = IntLattice(verified, n);
  } else {
    v.transcript.push_back("budget exhausted without a certificate");
  }
  return v;
}

// ----------------------------------------------------------- anti-affine

std::vector<QClass> difference_classes(const QSpec& spec) {
  Jacobian<Rat> J(spec.curve());
  std::vector<QClass> out;
  for (const auto& f : spec.fibers()) {
    for (std::size_t j = 1; j < f.size(); ++j) out.push_back(J.class_from_pair(f[j], f[0]));
  }
  return out;
}

std::vector<std::string> difference_labels(const QSpec& spec) {
  std::vector<std::string> out;
  for (const auto& f : spec.fibers()) {
    for (std::size_t j = 1; j < f.size(); ++j) out.push_back("[" + f[j].to_string() + " - " + f[0].to_string() + "]");
  }
  return out;
}

std::string AntiAffineVerdict::answer_string() const {
  switch (answer) {
    case Answer::True:
      return "true";
    case Answer::False:
      return "false";
    case Answer::Undecided:
      break;
  }
  return "Undecided";
}

std::string AntiAffineVerdict::report() const {
  std::ostringstream os;
  os << "anti-affine: " << answer_string() << "\n";
  if (certificate) os << "certificate: " << format_vector(*certificate) << "\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    os << "class " << i + 1 << ": " << labels[i] << " = " << classes[i].to_string() << "\n";
  }
  os << relations.report();
  return os.str();
}

AntiAffineVerdict is_anti_affine(const QSpec& spec, const PrimeBudget& budget) {
  AntiAffineVerdict v;
  v.classes = difference_classes(spec);
  v.labels = difference_labels(spec);
  if (v.classes.empty()) throw DomainError("is_anti_affine: no gluing data");
  Jacobian<Rat> J(spec.curve());
  v.relations = relation_lattice(J, v.classes, budget);
  switch (v.relations.status) {
    case RelationVerdict::Status::Independent:
      v.answer = AntiAffineVerdict::Answer::True;
      break;
    case RelationVerdict::Status::Dependent:
      v.answer = AntiAffineVerdict::Answer::False;
      v.certificate = v.relations.lattice.basis().front();
      break;
    case RelationVerdict::Status::Undecided:
      v.answer = AntiAffineVerdict::Answer::Undecided;
      break;
  }
  return v;
}

void is_anti_affine(const SingularCurveSpec<Fp>& spec, const PrimeBudget&) {
  throw DomainError("is_anti_affine: over " + spec.curve().field().name() +
                    " every class is torsion, so J(X) is never anti-affine; give a curve over Q");
}

// ----------------------------------------------------------------- graded

int graded_dim(const QSpec& spec, const IntVec& k) {
  const auto classes = difference_classes(spec);
  if (k.size() != classes.size()) throw DomainError("graded_dim: exponent vector has the wrong length");
  Jacobian<Rat> J(spec.curve());
  return combine(J, classes, k).is_identity() ? 1 : 0;
}

GradedBox graded_box(const QSpec& spec, long bound) {
  if (bound < 0) throw DomainError("graded_box: negative bound");
  const auto classes = difference_classes(spec);
  const std::size_t t = classes.size();
  Jacobian<Rat> J(spec.curve());
  const auto width = static_cast<std::uint64_t>(2 * bound + 1);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < t; ++i) {
    if (total > 1000000 / width) throw GuardError("graded_box: more than 10^6 exponent vectors");
    total *= width;
  }

  // A combination trivial over Q is trivial mod p, so a nonzero reduction
  // rules a vector out before the exact check.
  std::optional<Jacobian<Fp>> Jp;
  std::vector<std::vector<MumfordClass<Fp>>> mod_multiples;
  for (auto p : good_primes(spec.curve(), {})) {
    Jacobian<Fp> cand(HyperellipticCurve<Fp>(*reduce_mod(spec.curve().f(), p)));
    std::vector<MumfordClass<Fp>> red;
    for (const auto& c : classes) {
      auto r = reduce_class(c, cand);
      if (!r) break;
      red.push_back(*r);
    }
    if (red.size() != t) continue;
    for (const auto& r : red) {
      std::vector<MumfordClass<Fp>> row;
      for (long k = -bound; k <= bound; ++k) row.push_back(cand.smul(k, r));
      mod_multiples.push_back(std::move(row));
    }
    Jp.emplace(std::move(cand));
    break;
  }

  std::vector<std::vector<QClass>> multiples;
  for (const auto& c : classes) {
    std::vector<QClass> row;
    for (long k = -bound; k <= bound; ++k) row.push_back(J.smul(k, c));
    multiples.push_back(std::move(row));
  }

  GradedBox out;
  out.bound = bound;
  std::vector<std::uint64_t> idx(t, 0);
  for (std::uint64_t it = 0; it < total; ++it) {
    bool candidate = true;
    if (Jp) {
      auto acc = Jp->identity();
      for (std::size_t i = 0; i < t; ++i) acc = Jp->add(acc, mod_multiples[i][idx[i]]);
      candidate = acc.is_identity();
    }
    if (candidate) {
      auto acc = J.identity();
      for (std::size_t i = 0; i < t; ++i) acc = J.add(acc, multiples[i][idx[i]]);
      if (acc.is_identity()) {
        IntVec k(t);
        for (std::size_t i = 0; i < t; ++i) k[i] = static_cast<long>(idx[i]) - bound;
        out.trivial.push_back(std::move(k));
      }
    }
    for (std::size_t i = t; i-- > 0;) {
      if (++idx[i] < width) break;
      idx[i] = 0;
    }
  }
  out.count = out.trivial.size();
  return out;
}

// ---------------------------------------------------------------- anchors

QSpec with_anchors(const QSpec& spec, const std::vector<std::size_t>& anchors) {
  if (anchors.size() != spec.fibers().size()) throw DomainError("with_anchors: one anchor per fiber");
  QSpec s = spec;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (anchors[i] >= spec.fibers()[i].size()) throw DomainError("with_anchors: branch out of range");
    s = s.with_anchor(i, anchors[i]);
  }
  return s;
}

IntMatrix anchor_transform(const QSpec& spec, const std::vector<std::size_t>& anchors) {
  std::size_t t = 0;
  for (const auto& f : spec.fibers()) t += f.size() - 1;
  IntMatrix T(t, IntVec(t, 0));
  std::size_t off = 0;
  for (std::size_t i = 0; i < spec.fibers().size(); ++i) {
    const std::size_t d = spec.fibers()[i].size();
    const std::size_t m = anchors.at(i);
    // new branch j (1-based after the anchor) is original branch o(j)
    for (std::size_t j = 1; j < d; ++j) {
      const std::size_t o = j <= m ? j - 1 : j;
      auto& row = T[off + j - 1];
      if (o >= 1) row[off + o - 1] += 1;
      if (m >= 1) row[off + m - 1] -= 1;
    }
    off += d - 1;
  }
  return T;
}

AnchorCheck basepoint_invariance_check(const QSpec& spec, const PrimeBudget& budget) {
  AnchorCheck out;
  const auto base = is_anti_affine(spec, budget);
  const auto base_classes = base.classes;
  Jacobian<Rat> J(spec.curve());
  std::vector<std::size_t> anchors(spec.fibers().size(), 0);
  std::size_t combos = 0;
  while (true) {
    if (++combos > 256) throw GuardError("basepoint_invariance_check: more than 256 anchor choices");
    const auto s = with_anchors(spec, anchors);
    const auto v = is_anti_affine(s, budget);
    std::ostringstream line;
    line << "anchors";
    for (auto a : anchors) line << " " << a + 1;
    line << ": " << v.answer_string();
    if (v.answer != base.answer) out.invariant = false;
    if (v.relations.status == RelationVerdict::Status::Dependent) {
      const auto moved = lattice_transform(v.relations.lattice, anchor_transform(spec, anchors));
      line << ", relations " << v.relations.lattice.to_string() << " -> " << moved.to_string();
      for (const auto& r : moved.basis()) {
        if (!combine(J, base_classes, r).is_identity()) {
          out.invariant = false;
          line << " (transported relation fails)";
        }
      }
    }
    out.transcript.push_back(line.str());
    std::size_t i = 0;
    for (; i < anchors.size(); ++i) {
      if (++anchors[i] < spec.fibers()[i].size()) break;
      anchors[i] = 0;
    }
    if (i == anchors.size()) break;
  }
  return out;
}

}  // namespace gjac
