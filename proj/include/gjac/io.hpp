#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "gjac/curve.hpp"
#include "gjac/error.hpp"
#include "gjac/genjac.hpp"
#include "gjac/poly.hpp"

namespace gjac {

/// Line-level content of a curve file:
///
///   # comment
///   curve Q: y^2 = 4*x^3 + 4*x^2 - 8*x + 1
///   glue: (0,1) (1,1)
///   points: (0,1) (1,1) (-2,1) inf
///
/// The field token is `Q` or `F<p>`. Coefficients are integers; point
/// coordinates may be fractions over Q. `inf` is the point at infinity of an
/// odd-degree model, `inf+`/`inf-` the two points of an even-degree model.
struct CurveFile {
  std::uint64_t p = 0;  // 0 for Q
  std::string field_token;
  std::vector<std::pair<int, mpz_class>> terms;  // (exponent, coefficient)
  std::string curve_line;
  std::vector<std::vector<std::string>> glue;
  std::vector<std::string> points;

  bool over_q() const { return p == 0; }
};

CurveFile parse_curve_file(std::istream& in);
CurveFile parse_curve_text(const std::string& text);

/// Splits "(x,y) (x,y) inf" into point tokens.
std::vector<std::string> split_points(const std::string& text);

/// Integer polynomial text `c*x^k + ...`, as (exponent, coefficient) terms.
std::vector<std::pair<int, mpz_class>> parse_poly_terms(const std::string& text);

namespace detail {

template <FieldElement K>
K parse_scalar(const std::string& s, const typename K::Field& F) {
  std::string t;
  for (char c : s) {
    if (c != ' ' && c != '\t') t += c;
  }
  if (t.empty()) throw ParseError("empty coordinate");
  const auto slash = t.find('/');
  auto integer = [&](const std::string& digits) {
    mpz_class z;
    if (digits.empty() || z.set_str(digits, 10) != 0) throw ParseError("bad number '" + s + "'");
    return z;
  };
  if (slash == std::string::npos) return F.from_mpz(integer(t));
  const mpz_class num = integer(t.substr(0, slash));
  const mpz_class den = integer(t.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  if constexpr (is_rational_v<K>) {
    return Rat(num, den);
  } else {
    const K d = F.from_mpz(den);
    if (d.is_zero()) throw ParseError("denominator divisible by p in '" + s + "'");
    return F.from_mpz(num) / d;
  }
}

}  // namespace detail

template <FieldElement K>
Poly<K> make_poly(const std::vector<std::pair<int, mpz_class>>& terms, const typename K::Field& F) {
  int deg = 0;
  for (const auto& [e, c] : terms) deg = std::max(deg, e);
  std::vector<K> coeffs(static_cast<std::size_t>(deg + 1), F.zero());
  for (const auto& [e, c] : terms) coeffs[static_cast<std::size_t>(e)] += F.from_mpz(c);
  return Poly<K>(F, coeffs);
}

/// "(x,y)", "inf", "inf+" or "inf-".
template <FieldElement K>
CurvePoint<K> parse_point(const std::string& token, const typename K::Field& F) {
  std::string t;
  for (char c : token) {
    if (c != ' ' && c != '\t') t += c;
  }
  if (t == "inf") return CurvePoint<K>::infinity(0);
  if (t == "inf+") return CurvePoint<K>::infinity(1);
  if (t == "inf-") return CurvePoint<K>::infinity(-1);
  if (t.size() < 5 || t.front() != '(' || t.back() != ')') throw ParseError("bad point '" + token + "'");
  const auto comma = t.find(',');
  if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
    throw ParseError("bad point '" + token + "'");
  }
  return CurvePoint<K>::affine(detail::parse_scalar<K>(t.substr(1, comma - 1), F),
                               detail::parse_scalar<K>(t.substr(comma + 1, t.size() - comma - 2), F));
}

/// A parsed file over a concrete field: the curve as written, the
/// odd-degree model used for arithmetic, and points in both coordinates.
template <FieldElement K>
class LoadedCurve {
 public:
  using Point = CurvePoint<K>;
  using Field = typename K::Field;

  LoadedCurve(const CurveFile& file, const Field& F)
      : file_(file), original_(make_poly<K>(file.terms, F)), model_(make_model(original_)) {
    for (const auto& fiber : file.glue) {
      std::vector<Point> pts;
      for (const auto& tok : fiber) pts.push_back(parse_point<K>(tok, F));
      glue_.push_back(std::move(pts));
    }
    for (const auto& tok : file.points) points_.push_back(parse_point<K>(tok, F));
    for (const auto& fiber : glue_) {
      for (const auto& P : fiber) check_gluable(P);
    }
    for (const auto& P : points_) check_gluable(P);
  }

  const CurveFile& file() const { return file_; }
  const HyperellipticCurve<K>& original() const { return original_; }
  const HyperellipticCurve<K>& curve() const { return model_.curve(); }
  const OddModel<K>& model() const { return model_; }

  const std::vector<std::vector<Point>>& glue() const { return glue_; }
  const std::vector<Point>& points() const { return points_; }

  /// Original coordinates -> odd model.
  Point to_model(const Point& P) const {
    check(P);
    return model_.map(P);
  }

  std::vector<Point> model_points() const {
    std::vector<Point> out;
    for (const auto& P : points_) out.push_back(to_model(P));
    return out;
  }

  SingularCurveSpec<K> spec() const {
    if (glue_.empty()) throw ParseError("file has no glue: lines");
    std::vector<std::vector<Point>> fibers;
    for (const auto& fiber : glue_) {
      std::vector<Point> mapped;
      for (const auto& P : fiber) mapped.push_back(to_model(P));
      fibers.push_back(std::move(mapped));
    }
    return SingularCurveSpec<K>(model_.curve(), std::move(fibers));
  }

 private:
  static OddModel<K> make_model(const HyperellipticCurve<K>& C) {
    auto m = OddModel<K>::of(C);
    if (!m) throw DomainError("even-degree model without a rational Weierstrass point; no odd-degree model over the base field");
    return *m;
  }

  // Points at infinity of an even-degree model stay out of gluing data.
  void check_gluable(const Point& P) const {
    check(P);
    if (P.at_infinity && !original_.odd_degree()) {
      throw DomainError("even-degree model: the points at infinity cannot be glued");
    }
  }

  void check(const Point& P) const {
    if (P.at_infinity) {
      if (original_.odd_degree() && P.branch != 0) throw DomainError("odd-degree model: write the point at infinity as 'inf'");
      if (!original_.odd_degree()) {
        if (P.branch == 0) throw DomainError("even-degree model: write 'inf+' or 'inf-'");
        if (original_.infinity_count() != 2) throw DomainError("even-degree model: points at infinity are not rational");
      }
      return;
    }
    original_.require(P);
  }

  CurveFile file_;
  HyperellipticCurve<K> original_;
  OddModel<K> model_;
  std::vector<std::vector<Point>> glue_;
  std::vector<Point> points_;
};

/// Gluing-data text for fibers given in the file's own coordinates.
template <FieldElement K>
std::string format_spec(const CurveFile& file, const std::vector<std::vector<CurvePoint<K>>>& fibers) {
  std::string s = file.curve_line + "\n";
  for (const auto& fiber : fibers) {
    s += "glue:";
    for (const auto& P : fiber) s += " " + P.to_string();
    s += "\n";
  }
  return s;
}

}  // namespace gjac
