#include "gjac/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gjac/construct.hpp"
#include "gjac/decide.hpp"
#include "gjac/io.hpp"
#include "gjac/linsys.hpp"

namespace gjac {

namespace {

CurveFile load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_curve_file(in);
}

/// Calls fn(LoadedCurve<K>) with K chosen by the file's field.
template <class Fn>
int with_curve(const CurveFile& file, Fn&& fn) {
  if (file.over_q()) return fn(LoadedCurve<Rat>(file, RationalField{}));
  return fn(LoadedCurve<Fp>(file, PrimeField{file.p}));
}

template <FieldElement K>
std::pair<CurvePoint<K>, CurvePoint<K>> parse_pair(const LoadedCurve<K>& L, const std::string& text) {
  const auto toks = split_points(text);
  if (toks.size() != 2) throw ParseError("--pair expects two points, e.g. \"(0,0) inf\"");
  const auto F = L.original().field();
  return {L.to_model(parse_point<K>(toks[0], F)), L.to_model(parse_point<K>(toks[1], F))};
}

template <FieldElement K>
void print_model(const LoadedCurve<K>& L, std::ostream& out) {
  if (L.model().is_identity()) return;
  const auto& a = *L.model().shift();
  const std::string lin = a.is_zero() ? "x" : (a.to_string()[0] == '-' ? "x + " + (-a).to_string() : "x - " + a.to_string());
  out << "odd model: " << L.curve().to_string() << "  (x -> 1/(" << lin << "), y -> y/(" << lin << ")^"
      << L.original().genus() + 1 << ")\n";
}

template <FieldElement K>
std::string join_points(const std::vector<CurvePoint<K>>& pts) {
  std::string s;
  for (const auto& P : pts) s += (s.empty() ? "" : " ") + P.to_string();
  return s.empty() ? "none" : s;
}

// ------------------------------------------------------------------ commands

int cmd_curve_info(const CurveFile& file, std::ostream& out) {
  return with_curve(file, [&](const auto& L) {
    const auto& C = L.original();
    out << "field: " << C.field().name() << "\n";
    out << "curve: " << C.to_string() << "\n";
    out << "degree: " << C.f().degree() << "\n";
    out << "genus: " << C.genus() << "\n";
    out << "discriminant: " << discriminant(C.f()).to_string() << "\n";
    out << "points at infinity: " << C.infinity_count() << "\n";
    print_model(L, out);
    out << "rational Weierstrass points: " << join_points(C.weierstrass_points()) << "\n";
    using K = std::decay_t<decltype(C.f().lc())>;
    if constexpr (K::Field::is_finite()) {
      const auto pts = C.points();
      out << "point count: " << pts.size() << "\n";
      if (pts.size() <= 64) out << "points: " << join_points(pts) << "\n";
      const double r = std::sqrt(static_cast<double>(C.field().size()));
      const int e = 2 * C.genus();
      out << "weil bounds for #J: [" << std::pow(r - 1, e) << ", " << std::pow(r + 1, e) << "]\n";
    }
    return kExitOk;
  });
}

int cmd_class_order(const CurveFile& file, const std::string& pair, const PrimeBudget& budget, std::ostream& out) {
  return with_curve(file, [&](const auto& L) {
    using K = std::decay_t<decltype(L.curve().f().lc())>;
    const auto [x, z] = parse_pair(L, pair);
    Jacobian<K> J(L.curve());
    const auto c = J.class_from_pair(x, z);
    out << "class: " << c.to_string() << "\n";
    if constexpr (K::Field::is_finite()) {
      out << "order: " << J.order(c) << "\n";
      return kExitOk;
    } else {
      const auto v = is_torsion_q(J, c, budget);
      out << v.report();
      return v.status == TorsionVerdict::Status::Undecided ? kExitUndecided : kExitOk;
    }
  });
}

int cmd_census(const CurveFile& file, std::ostream& out) {
  if (file.over_q()) throw DomainError("census: needs a curve over a finite field");
  LoadedCurve<Fp> L(file, PrimeField{file.p});
  print_model(L, out);
  Jacobian<Fp> J(L.curve());
  const auto census = torsion_census(J);
  out << "points: " << census.points.size() << "\n";
  out << "ordered pairs x != z: " << census.off_diagonal_pairs << "\n";
  out << "pairs with [x - z] = [sigma(z) - sigma(x)]: " << census.coincidences << "\n";
  out << "order histogram:";
  for (const auto& [n, k] : census.histogram) out << " " << n << ":" << k;
  out << "\n";
  for (const auto& [ij, n] : census.order) {
    out << census.points[ij.first].to_string() << " " << census.points[ij.second].to_string() << " " << n << "\n";
  }
  return kExitOk;
}

int cmd_is_antiaffine(const CurveFile& file, const PrimeBudget& budget, std::ostream& out) {
  if (!file.over_q()) {
    LoadedCurve<Fp> L(file, PrimeField{file.p});
    is_anti_affine(L.spec(), budget);
  }
  LoadedCurve<Rat> L(file, RationalField{});
  print_model(L, out);
  const auto v = is_anti_affine(L.spec(), budget);
  out << v.report();
  return v.answer == AntiAffineVerdict::Answer::Undecided ? kExitUndecided : kExitOk;
}

int cmd_regfun_count(const CurveFile& file, long box, std::ostream& out) {
  if (!file.over_q()) throw DomainError("regfun-count: needs a curve over Q");
  LoadedCurve<Rat> L(file, RationalField{});
  const auto spec = L.spec();
  const auto labels = difference_labels(spec);
  for (std::size_t i = 0; i < labels.size(); ++i) out << "class " << i + 1 << ": " << labels[i] << "\n";
  const auto b = graded_box(spec, box);
  out << "box: " << b.bound << "\n";
  out << "count: " << b.count << "\n";
  out << "trivial exponent vectors:";
  for (const auto& k : b.trivial) out << " " << format_vector(k);
  out << "\n";
  return kExitOk;
}

int cmd_kempf(const CurveFile& file, const std::string& pair, std::ostream& out) {
  return with_curve(file, [&](const auto& L) {
    using K = std::decay_t<decltype(L.curve().f().lc())>;
    const auto [x, z] = parse_pair(L, pair);
    RiemannRoch<K> rr(L.curve());
    const auto r = kempf_obstructed(rr, x, z);
    out << "genus: " << r.genus << "\n";
    out << "l(x + z): " << r.l_x_plus_z << "\n";
    out << "l(K - x - z): " << r.l_k_minus_x_minus_z << "\n";
    out << "obstructed: " << (r.obstructed ? "true" : "false") << "\n";
    out << "note: " << r.note << "\n";
    return kExitOk;
  });
}

std::vector<int> parse_profile(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const int d = std::stoi(tok, &used);
      if (used != tok.size()) throw ParseError("");
      out.push_back(d);
    } catch (const std::exception&) {
      throw ParseError("--profile expects comma-separated integers, got '" + s + "'");
    }
  }
  if (out.empty()) throw ParseError("--profile is empty");
  return out;
}

int cmd_construct(const CurveFile& file, int nodes, const std::string& profile, const ConstructOptions& opts,
                  std::ostream& out) {
  if (!file.over_q()) throw DomainError("construct: needs a curve over Q");
  LoadedCurve<Rat> L(file, RationalField{});
  const auto points = L.model_points();
  if (points.empty()) throw DomainError("construct: the file lists no points (add a 'points:' line)");
  auto to_original = [&](const std::vector<std::vector<std::size_t>>& fibers) {
    std::vector<std::vector<CurvePoint<Rat>>> fs;
    for (const auto& f : fibers) {
      std::vector<CurvePoint<Rat>> pts;
      for (auto i : f) pts.push_back(L.points()[i]);
      fs.push_back(std::move(pts));
    }
    return fs;
  };
  try {
    const auto r = profile.empty() ? select_nodal(L.curve(), points, nodes, opts)
                                   : select_ordinary(L.curve(), points, parse_profile(profile), opts);
    out << "# construct: certified anti-affine (relation lattice independent)\n";
    if (r.low_genus) {
      out << "# note: genus " << L.original().genus()
          << " < 4, so existence is not guaranteed in general; this certificate is unconditional\n";
    }
    out << format_spec(file, to_original(r.fibers));
    return kExitOk;
  } catch (const ExhaustionError& e) {
    out << "# exhaustion: " << e.what() << "\n";
    out << "# partial selection:\n";
    std::istringstream partial(format_spec(file, to_original(e.partial())));
    std::string line;
    std::getline(partial, line);  // curve line
    bool any = false;
    while (std::getline(partial, line)) {
      out << "# " << line << "\n";
      any = true;
    }
    if (!any) out << "# (none)\n";
    const auto& t = e.transcript();
    constexpr std::size_t kShown = 20;
    if (t.size() > kShown) out << "# ... " << t.size() - kShown << " earlier steps omitted\n";
    for (std::size_t i = t.size() > kShown ? t.size() - kShown : 0; i < t.size(); ++i) out << "# " << t[i] << "\n";
    return kExitError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacobians and generalized Jacobians of hyperelliptic curves", "gjac"};
  app.require_subcommand(1);

  std::string file;
  std::string pair;
  std::size_t budget_primes = 8;
  long box = 5;
  int nodes = 0;
  std::string profile;
  bool backtrack = false;
  std::vector<long long> csi_args;

  auto* info = app.add_subcommand("curve-info", "genus, discriminant, Weierstrass points, point count");
  info->add_option("file", file, "curve file")->required();

  auto* order = app.add_subcommand("class-order", "order of [x - z] over F_p, torsion verdict over Q");
  order->add_option("file", file, "curve file")->required();
  order->add_option("--pair", pair, "two points, e.g. \"(0,0) inf\"")->required();
  order->add_option("--budget", budget_primes, "number of good primes")->check(CLI::PositiveNumber);

  auto* census = app.add_subcommand("census", "orders of all [x - z] over a finite field");
  census->add_option("file", file, "curve file")->required();

  auto* anti = app.add_subcommand("is-antiaffine", "decide whether J(X) is anti-affine");
  anti->add_option("file", file, "curve file with glue lines")->required();
  anti->add_option("--budget", budget_primes, "number of good primes")->check(CLI::PositiveNumber);

  auto* regfun = app.add_subcommand("regfun-count", "graded regular functions over an exponent box");
  regfun->add_option("file", file, "curve file with glue lines")->required();
  regfun->add_option("--box", box, "box bound B")->check(CLI::NonNegativeNumber);

  auto* kempf = app.add_subcommand("kempf", "Kempf obstruction report for a pair");
  kempf->add_option("file", file, "curve file")->required();
  kempf->add_option("--pair", pair, "two distinct points")->required();

  auto* csi = app.add_subcommand("csi", "Castelnuovo-Severi bound (h1-1)(h2-1) + k1 h1 + k2 h2");
  csi->add_option("values", csi_args, "h1 k1 h2 k2")->required()->expected(4);

  auto* cons = app.add_subcommand("construct", "select gluing data with an anti-affine Jacobian");
  cons->add_option("file", file, "curve file with a points: line")->required();
  auto* nodes_opt = cons->add_option("--nodes", nodes, "number of nodes");
  auto* profile_opt = cons->add_option("--profile", profile, "fiber sizes d1,d2,...");
  nodes_opt->excludes(profile_opt);
  cons->add_option("--budget", budget_primes, "number of good primes")->check(CLI::PositiveNumber);
  cons->add_flag("--backtrack", backtrack, "full backtracking search");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  const PrimeBudget budget{budget_primes, 200};
  try {
    if (*info) return cmd_curve_info(load_file(file), out);
    if (*order) return cmd_class_order(load_file(file), pair, budget, out);
    if (*census) return cmd_census(load_file(file), out);
    if (*anti) return cmd_is_antiaffine(load_file(file), budget, out);
    if (*regfun) return cmd_regfun_count(load_file(file), box, out);
    if (*kempf) return cmd_kempf(load_file(file), pair, out);
    if (*csi) {
      out << csi_bound(csi_args[0], csi_args[1], csi_args[2], csi_args[3]) << "\n";
      return kExitOk;
    }
    if (*cons) {
      if (nodes_opt->count() == 0 && profile.empty()) throw ParseError("construct: give --nodes n or --profile d1,d2,...");
      return cmd_construct(load_file(file), nodes, profile, ConstructOptions{budget, backtrack}, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace gjac
