#include "gjac/construct.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gjac {

namespace {

using Point = CurvePoint<Rat>;
using Fibers = std::vector<std::vector<std::size_t>>;

class Search {
 public:
  Search(const HyperellipticCurve<Rat>& C, const std::vector<Point>& points, const std::vector<int>& profile,
         const ConstructOptions& opts)
      : C_(C), J_(C), points_(points), profile_(profile), opts_(opts), used_(points.size(), false) {}

  std::optional<Fibers> run() {
    Fibers cur;
    if (step(cur, 0, 0)) return cur;
    return std::nullopt;
  }

  const Fibers& best() const { return best_; }
  std::vector<std::string>& transcript() { return transcript_; }
  bool capped() const { return capped_; }

  QSpec make_spec(const Fibers& fibers) const {
    std::vector<std::vector<Point>> fs;
    for (const auto& f : fibers) {
      std::vector<Point> pts;
      for (auto i : f) pts.push_back(points_[i]);
      fs.push_back(std::move(pts));
    }
    return QSpec(C_, std::move(fs));
  }

  std::string describe(const std::vector<std::size_t>& fiber) const {
    std::string s;
    for (auto i : fiber) s += (s.empty() ? "" : " ") + points_[i].to_string();
    return s;
  }

 private:
  // The verdict depends only on the set of classes up to sign.
  std::vector<QClass> class_key(const QSpec& spec) const {
    auto cs = difference_classes(spec);
    for (auto& c : cs) c = std::min(c, J_.neg(c));
    std::sort(cs.begin(), cs.end());
    return cs;
  }

  bool certified(const Fibers& fibers) {
    const auto spec = make_spec(fibers);
    auto key = class_key(spec);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (count_ >= opts_.max_certifications) {
      capped_ = stop_ = true;
      return false;
    }
    ++count_;
    const bool ok = is_anti_affine(spec, opts_.budget).answer == AntiAffineVerdict::Answer::True;
    memo_.emplace(std::move(key), ok);
    return ok;
  }

  void record(const Fibers& fibers) {
    std::size_t a = 0, b = 0;
    for (const auto& f : fibers) a += f.size();
    for (const auto& f : best_) b += f.size();
    if (a > b) best_ = fibers;
  }

  // Fill fiber `fi`; `have` branches are already placed in it.
  bool step(Fibers& cur, std::size_t fi, std::size_t have) {
    if (fi == profile_.size()) return true;
    const auto want = static_cast<std::size_t>(profile_[fi]);
    if (have == want) return step(cur, fi + 1, 0);

    const std::size_t n = points_.size();
    if (have == 0) {
      // first pair of a new fiber: anchor a, branch b > a
      // when backtracking, equal-size fibers are taken in anchor order
      std::size_t a0 = 0;
      if (opts_.backtrack && fi > 0 && profile_[fi] == profile_[fi - 1]) a0 = cur[fi - 1][0] + 1;
      for (std::size_t a = a0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          if (stop_) return false;
          if (used_[a] || used_[b]) continue;
          cur.push_back({a, b});
          if (try_extend(cur, fi, 2, {a, b})) return true;
          cur.pop_back();
        }
      }
      return false;
    }
    // branches past the first pair are a set; backtracking adds them in order
    const std::size_t c0 = opts_.backtrack && have > 2 ? cur[fi].back() + 1 : 0;
    for (std::size_t c = c0; c < n; ++c) {
      if (stop_) return false;
      if (used_[c]) continue;
      cur[fi].push_back(c);
      if (try_extend(cur, fi, have + 1, {c})) return true;
      cur[fi].pop_back();
    }
    return false;
  }

  bool try_extend(Fibers& cur, std::size_t fi, std::size_t have, const std::vector<std::size_t>& added) {
    if (!certified(cur)) return false;
    for (auto i : added) used_[i] = true;
    record(cur);
    transcript_.push_back("fiber " + std::to_string(fi + 1) + ": " + describe(cur[fi]) + " certified");
    if (step(cur, fi, have)) return true;
    for (auto i : added) used_[i] = false;
    // greedy mode keeps its first certified choice and stops here
    if (!opts_.backtrack) stop_ = true;
    return false;
  }

  const HyperellipticCurve<Rat>& C_;
  Jacobian<Rat> J_;
  const std::vector<Point>& points_;
  std::vector<int> profile_;
  ConstructOptions opts_;
  std::vector<bool> used_;
  std::map<std::vector<QClass>, bool> memo_;
  Fibers best_;
  std::vector<std::string> transcript_;
  std::size_t count_ = 0;
  bool capped_ = false;
  bool stop_ = false;
};

void validate(const HyperellipticCurve<Rat>& C, const std::vector<Point>& points, const std::vector<int>& profile) {
  if (C.genus() < 1) throw DomainError("construct: the curve must have genus >= 1");
  if (profile.empty()) throw DomainError("construct: need at least one singular point");
  int total = 0;
  for (int d : profile) {
    if (d < 2) throw DomainError("construct: every fiber needs at least two points");
    total += d;
  }
  std::set<Point> seen;
  for (const auto& P : points) {
    C.require(P);
    if (!seen.insert(P).second) throw DomainError("construct: point " + P.to_string() + " listed twice");
  }
  if (static_cast<std::size_t>(total) > points.size()) {
    throw DomainError("construct: profile needs " + std::to_string(total) + " points, only " +
                      std::to_string(points.size()) + " supplied");
  }
}

}  // namespace

ConstructResult select_ordinary(const HyperellipticCurve<Rat>& C, const std::vector<Point>& points,
                                const std::vector<int>& profile, const ConstructOptions& opts) {
  validate(C, points, profile);
  Search s(C, points, profile, opts);
  const auto found = s.run();
  if (!found) {
    std::string msg = "construct: no certified selection from the supplied points";
    if (s.capped()) msg += " (certification cap reached)";
    throw ExhaustionError(msg, s.best(), s.transcript());
  }
  ConstructResult r{*found, s.make_spec(*found), {}, C.genus() < 4, s.transcript()};
  r.verdict = is_anti_affine(r.spec, opts.budget);
  if (r.verdict.answer != AntiAffineVerdict::Answer::True) {
    throw DomainError("internal: constructed spec failed re-certification");
  }
  return r;
}

ConstructResult select_nodal(const HyperellipticCurve<Rat>& C, const std::vector<Point>& points, int n,
                             const ConstructOptions& opts) {
  if (n < 1) throw DomainError("construct: need n >= 1 nodes");
  return select_ordinary(C, points, std::vector<int>(static_cast<std::size_t>(n), 2), opts);
}

}  // namespace gjac
