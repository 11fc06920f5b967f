#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include "zmc/numfmt.hpp"
#include "zmc/parallel.hpp"

namespace zmc::cli {

using std::numbers::pi;
using nlohmann::json;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::PreconditionUnmet: return kPreconditionUnmet;
    case ErrorKind::NoConvergence:
    case ErrorKind::NumericFailure:
    case ErrorKind::PoleNotFound:
    case ErrorKind::PathBlocked:
    case ErrorKind::PoleHit: return kNumericFailure;
    default: return kInputError;
  }
}

// ------------------------------------------------------------------- input

Angle parse_angle_string(const std::string& s) {
  static const std::regex frac(R"(^\s*(?:([+-]?\d+)\s*(?:/\s*(\d+))?\s*\*?\s*)?pi\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, frac)) {
    long long num = m[1].matched ? std::stoll(m[1].str()) : 1;
    long long den = m[2].matched ? std::stoll(m[2].str()) : 1;
    if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator");
    return Angle::pi(num, den);
  }
  static const std::regex zero(R"(^\s*[+-]?0+(\.0*)?\s*$)");
  if (std::regex_match(s, zero)) return Angle::pi(0, 1);
  // plain radians
  auto first = s.find_first_not_of(" \t"), last = s.find_last_not_of(" \t");
  if (first != std::string::npos) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + first, s.data() + last + 1, v);
    if (ec == std::errc{} && ptr == s.data() + last + 1 && std::isfinite(v)) return Angle::rad(v);
  }
  throw Error(ErrorKind::InvalidInput, "expected radians or a string like \"3/4 pi\"");
}

namespace {

GalleryEntry entry_from_data(KobayashiData d) {
  GalleryEntry e;
  e.name = "input";
  e.description = "surface read from a JSON document";
  e.raw = d.raw();
  e.expected.graph_condition = check_conditions(d.angular, d.principal).graph_condition;
  e.data = std::move(d);
  return e;
}

std::string located(const std::string& source, const std::string& text, std::size_t byte, const std::string& msg) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n')
      ++line, col = 1;
    else
      ++col;
  }
  return source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
}

double number_field(const json& j, const char* key, const std::string& where) {
  if (!j.is_number()) throw Error(ErrorKind::InvalidInput, where + key + ": expected a number");
  return j.get<double>();
}

}  // namespace

LoadedSurface load_gallery(const std::string& spec) {
  LoadedSurface s;
  s.entry = gallery_lookup(spec);
  return s;
}

LoadedSurface load_json_text(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, located(source, text, e.byte == 0 ? 0 : e.byte - 1, e.what()));
  }
  const std::string where = source + ": ";
  if (!doc.is_object()) throw Error(ErrorKind::InvalidInput, where + "top level must be an object");
  for (auto& [k, v] : doc.items())
    if (k != "n" && k != "alphas" && k != "blaschke" && k != "options")
      throw Error(ErrorKind::InvalidInput, where + "unknown key '" + k + "'");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw Error(ErrorKind::InvalidInput, where + "n: expected an integer");
  int n = doc["n"].get<int>();
  if (!doc.contains("alphas") || !doc["alphas"].is_array())
    throw Error(ErrorKind::InvalidInput, where + "alphas: expected a list");
  std::vector<Angle> alphas;
  const auto& al = doc["alphas"];
  for (std::size_t i = 0; i < al.size(); ++i) {
    const std::string name = "alphas[" + std::to_string(i) + "]";
    if (al[i].is_number()) {
      alphas.push_back(Angle::rad(al[i].get<double>()));
    } else if (al[i].is_string()) {
      try {
        alphas.push_back(parse_angle_string(al[i].get<std::string>()));
      } catch (const Error& e) {
        throw Error(ErrorKind::InvalidInput, where + name + " = \"" + al[i].get<std::string>() + "\": " + e.message());
      }
    } else {
      throw Error(ErrorKind::InvalidInput, where + name + ": expected radians or a string like \"3/4 pi\"");
    }
  }
  BlaschkeParams b;
  if (doc.contains("blaschke")) {
    const auto& bl = doc["blaschke"];
    if (!bl.is_array()) throw Error(ErrorKind::InvalidInput, where + "blaschke: expected a list of {re, im}");
    for (std::size_t i = 0; i < bl.size(); ++i) {
      const std::string name = "blaschke[" + std::to_string(i) + "].";
      if (!bl[i].is_object() || !bl[i].contains("re"))
        throw Error(ErrorKind::InvalidInput, where + "blaschke[" + std::to_string(i) + "]: expected {\"re\": x, \"im\": y}");
      double re = number_field(bl[i]["re"], "re", where + name);
      double im = bl[i].contains("im") ? number_field(bl[i]["im"], "im", where + name) : 0.0;
      b.b.emplace_back(re, im);
    }
  }
  SpecOptions opt;
  if (doc.contains("options")) {
    const auto& o = doc["options"];
    if (!o.is_object()) throw Error(ErrorKind::InvalidInput, where + "options: expected an object");
    for (auto& [k, v] : o.items()) {
      if (k == "u_max") {
        opt.u_max = number_field(v, "u_max", where + "options.");
        if (!(opt.u_max > 1)) throw Error(ErrorKind::InvalidInput, where + "options.u_max: must exceed 1");
      } else if (k == "resolution") {
        if (!v.is_number_integer() || v.get<int>() < 3)
          throw Error(ErrorKind::InvalidInput, where + "options.resolution: expected an integer >= 3");
        opt.resolution = v.get<int>();
      } else if (k == "margin") {
        opt.margin = number_field(v, "margin", where + "options.");
        if (!(opt.margin >= kMinClearance)) throw Error(ErrorKind::InvalidInput, where + "options.margin: must be at least 1e-12");
      } else if (k == "base_point") {
        if (v.is_string() && v.get<std::string>() == "infinity") {
          opt.base_point = ExtendedPoint::infinity();
        } else if (v.is_object() && v.contains("u") && v.contains("theta")) {
          opt.base_point = ExtendedPoint::finite(number_field(v["u"], "u", where + "options.base_point."),
                                                 number_field(v["theta"], "theta", where + "options.base_point."));
        } else {
          throw Error(ErrorKind::InvalidInput, where + "options.base_point: expected \"infinity\" or {\"u\": .., \"theta\": ..}");
        }
      } else {
        throw Error(ErrorKind::InvalidInput, where + "options: unknown key '" + k + "'");
      }
    }
  }
  AngularData ang;
  try {
    ang = AngularData::make(n, alphas);
  } catch (const Error& e) {
    throw Error(e.kind(), where + "alphas: " + e.message());
  }
  LoadedSurface s;
  try {
    s.entry = entry_from_data(build(ang, b));
  } catch (const Error& e) {
    throw Error(e.kind(), where + "blaschke: " + e.message());
  }
  s.options = opt;
  if (opt.base_point && !opt.base_point->is_infinity()) {
    Surface surf(*s.entry.data);
    if (!surf.domain().contains(*opt.base_point))
      throw Error(ErrorKind::InvalidInput, where + "options.base_point: outside the extension domain");
  }
  return s;
}

LoadedSurface load_json_file(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot read '" + path + "'");
    ss << f.rdbuf();
  }
  return load_json_text(ss.str(), path == "-" ? "<stdin>" : path);
}

// ---------------------------------------------------------------- classify

namespace {

std::string angle_text(const Angle& a) {
  if (!a.exact) return format_double(a.radians);
  auto f = a.exact->reduced();
  if (f.num == 0) return "0";
  std::string s = f.num == 1 ? "" : std::to_string(f.num);
  if (f.den != 1) s += (s.empty() ? "1" : "") + std::string("/") + std::to_string(f.den);
  return s + (s.empty() ? "pi" : " pi");
}

json fold_json(const FoldTypeReport& r) {
  json j;
  j["passed"] = r.passed();
  j["ends_on_circle"] = r.ends_on_circle;
  j["gauss_circle"] = r.gauss_circle_ok;
  j["fold_condition"] = r.fold_condition_ok;
  j["max_re_condition"] = r.max_re_condition;
  j["end_at_infinity"] = r.end_at_infinity;
  json ends = json::array();
  for (cplx z : r.finite_ends) ends.push_back({z.real(), z.imag()});
  j["finite_ends"] = ends;
  return j;
}

const char* yes(bool b) { return b ? "yes" : "no"; }

}  // namespace

int cmd_classify(const LoadedSurface& s, bool as_json, std::ostream& out) {
  const auto& e = s.entry;
  auto fold = verify_fold_type(e.raw, 256);
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["surface"] = e.name;
  j["kobayashi"] = e.is_kobayashi();
  j["fold_type"] = fold_json(fold);
  std::optional<ClassificationReport> rep;
  if (e.is_kobayashi()) {
    rep = classify(*e.data);
    const auto& d = *e.data;
    const auto& c = rep->conditions;
    j["n"] = d.n();
    json angles = json::array();
    for (const auto& a : d.angular.angles()) angles.push_back(angle_text(a));
    j["alphas"] = angles;
    j["principal"] = d.principal;
    j["evaluator"] = to_string(rep->method);
    j["period_residual"] = rep->period_residual;
    json cj;
    cj["graph_condition"] = to_string(c.graph_condition);
    cj["immersion_condition"] = to_string(c.immersion_condition);
    cj["distinct_angles"] = c.distinct_angles;
    cj["arithmetic"] = c.exact_arithmetic ? "exact" : "tolerance 1e-12";
    auto wj = [](const std::optional<Witness>& w) { return w ? json{{"u", w->u}, {"theta", w->theta}} : json(nullptr); };
    cj["graph_witness"] = wj(c.graph_witness);
    cj["immersion_witness"] = wj(c.immersion_witness);
    cj["witness_unknown"] = c.witness_unknown;
    j["conditions"] = cj;
    json um = json::array();
    for (const auto& u : c.umbilics)
      um.push_back({{"re", u.location.real()}, {"im", u.location.imag()}, {"multiplicity", u.multiplicity}});
    j["umbilics"] = um;
    json ends = json::array();
    for (const auto& en : rep->ends) ends.push_back({{"angle", en.angle}, {"multiplicity", en.multiplicity}});
    j["ends"] = ends;
    j["entire_graph"] = e.entire_graph();
  }
  if (as_json) {
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "surface: " << e.name << '\n';
  out << "description: " << e.description << '\n';
  out << "fold type: " << (fold.passed() ? "passed" : "failed") << " (ends on circle: " << yes(fold.ends_on_circle)
      << ", |g| = 1 on circle: " << yes(fold.gauss_circle_ok) << ", fold condition: " << yes(fold.fold_condition_ok)
      << ")\n";
  if (!rep) return kOk;
  const auto& d = *e.data;
  const auto& c = rep->conditions;
  out << "n: " << d.n() << '\n';
  out << "alphas:";
  const auto& angles = d.angular.angles();
  for (size_t k = 0; k < angles.size(); ++k) out << (k ? ", " : " ") << angle_text(angles[k]);
  out << "\nprincipal: " << yes(d.principal) << '\n';
  out << "evaluator: " << to_string(rep->method) << '\n';
  out << "period residual: " << format_double(rep->period_residual) << '\n';
  out << "graph condition (gaps <= pi/(n-1)): " << to_string(c.graph_condition) << '\n';
  if (c.graph_witness)
    out << "  witness: u = " << format_double(c.graph_witness->u) << ", theta = " << format_double(c.graph_witness->theta)
        << '\n';
  out << "immersion condition (gaps <= 2pi/(n-1)): " << to_string(c.immersion_condition) << '\n';
  if (c.immersion_witness)
    out << "  witness: u = " << format_double(c.immersion_witness->u)
        << ", theta = " << format_double(c.immersion_witness->theta) << '\n';
  if (c.witness_unknown) out << "  witness: unknown (Blaschke factors present)\n";
  out << "gap comparison: " << (c.exact_arithmetic ? "exact rational multiples of pi" : "tolerance 1e-12") << '\n';
  out << "umbilics in the open disk:";
  if (c.umbilics.empty()) out << " none";
  for (const auto& u : c.umbilics)
    out << " (" << format_double(u.location.real()) << ", " << format_double(u.location.imag()) << ") x" << u.multiplicity;
  out << "\nends:";
  for (const auto& en : rep->ends) out << " angle " << format_double(en.angle) << " x" << en.multiplicity << ';';
  out << "\nentire graph: " << yes(e.entire_graph()) << '\n';
  return kOk;
}

// ------------------------------------------------------------------ sample

int cmd_sample(const LoadedSurface& s, const SampleOptions& opt, std::ostream& out) {
  if (!s.entry.is_kobayashi())
    throw Error(ErrorKind::InvalidInput, "'" + s.entry.name + "' is not a Kobayashi surface; nothing to sample");
  Surface surf(*s.entry.data);
  GridOptions g;
  g.res_theta = g.res_u = opt.resolution.value_or(s.options.resolution);
  g.margin = opt.margin.value_or(s.options.margin);
  g.u_max = opt.u_max.value_or(s.options.u_max);
  auto mesh = sample_grid(surf, g);
  SurfacePoint shift{};
  if (s.options.base_point) shift = surf.eval(*s.options.base_point);
  for (auto& p : mesh.points) {
    p = {p.t - shift.t, p.x - shift.x, p.y - shift.y};
    p = s.entry.normalization.apply(p);
  }
  switch (opt.format) {
    case SampleOptions::Format::Obj: write_obj(out, mesh, opt.t_axis); break;
    case SampleOptions::Format::Ply: write_ply(out, mesh, opt.t_axis); break;
    case SampleOptions::Format::Csv: write_csv(out, mesh); break;
  }
  return kOk;
}

// ------------------------------------------------------------------- graph

int cmd_graph(const LoadedSurface& s, const GraphOptions& opt, std::ostream& out) {
  if (!s.entry.is_kobayashi())
    throw Error(ErrorKind::InvalidInput, "'" + s.entry.name + "' is not a Kobayashi surface");
  if (opt.resolution < 2) throw Error(ErrorKind::InvalidInput, "graph resolution must be at least 2");
  if (!(opt.x_max > opt.x_min) || !(opt.y_max > opt.y_min)) throw Error(ErrorKind::InvalidInput, "empty graph range");
  Surface surf(*s.entry.data);
  GraphInverter inv(surf, {.certified = s.entry.expected.certified_graph});
  const auto sc = s.entry.normalization.scale;
  // lambda in normalized coordinates
  auto lambda = [&](double X, double Y) { return sc[0] * inv.invert(X / sc[1], Y / sc[2]).lambda; };
  const int res = opt.resolution;
  struct Row {
    double lam, res, lx, ly;
  };
  std::vector<Row> rows(static_cast<size_t>(res) * res);
  parallel_for(static_cast<size_t>(res), [&](size_t i) {
    double x = opt.x_min + (opt.x_max - opt.x_min) * static_cast<double>(i) / (res - 1);
    for (int k = 0; k < res; ++k) {
      double y = opt.y_min + (opt.y_max - opt.y_min) * static_cast<double>(k) / (res - 1);
      auto g = graph_gradient(lambda, x, y, opt.h);
      rows[i * res + k] = {lambda(x, y), zmc_residual(lambda, x, y, opt.h), g.first, g.second};
    }
  });
  out << "x,y,lambda,causal,zmc_residual\n";
  for (int i = 0; i < res; ++i) {
    double x = opt.x_min + (opt.x_max - opt.x_min) * static_cast<double>(i) / (res - 1);
    for (int k = 0; k < res; ++k) {
      double y = opt.y_min + (opt.y_max - opt.y_min) * static_cast<double>(k) / (res - 1);
      const auto& r = rows[static_cast<size_t>(i) * res + k];
      out << format_double(x) << ',' << format_double(y) << ',' << format_double(r.lam) << ','
          << to_string(causal_character(r.lx, r.ly)) << ',' << format_double(r.res) << '\n';
    }
  }
  return kOk;
}

// ------------------------------------------------------------------- check

namespace {

struct Checker {
  std::ostream& out;
  int failures = 0;
  void report(const std::string& surface, const std::string& check, bool ok, const std::string& detail = "") {
    out << (ok ? "PASS " : "FAIL ") << surface << ' ' << check;
    if (!detail.empty()) out << ": " << detail;
    out << '\n';
    if (!ok) ++failures;
  }
};

std::vector<ExtendedPoint> check_points(const ExtensionDomain& dom, int count, unsigned seed, double min_clearance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> th(0, 2 * pi), lc(std::log(min_clearance), std::log(3.0));
  std::vector<ExtendedPoint> pts;
  for (int k = 0; k < count; ++k) pts.push_back(dom.at_clearance(th(rng), std::exp(lc(rng))));
  return pts;
}

double jacobian_fd_error(const Surface& s, unsigned seed) {
  double worst = 0;
  for (const auto& p : check_points(s.domain(), 16, seed, 0.05)) {
    const double h = 1e-5;
    auto up = s.eval(ExtendedPoint::finite(p.u() + h, p.theta()));
    auto dn = s.eval(ExtendedPoint::finite(p.u() - h, p.theta()));
    auto rt = s.eval(ExtendedPoint::finite(p.u(), p.theta() + h));
    auto lt = s.eval(ExtendedPoint::finite(p.u(), p.theta() - h));
    double fu[3], ft[3];
    for (int k = 0; k < 3; ++k) fu[k] = (up[k] - dn[k]) / (2 * h), ft[k] = (rt[k] - lt[k]) / (2 * h);
    double fd[3] = {fu[1] * ft[2] - fu[2] * ft[1], fu[0] * ft[1] - fu[1] * ft[0], fu[0] * ft[2] - fu[2] * ft[0]};
    auto j = jacobians_from_oneforms(s, p);
    // near a high-order end the minors cancel strongly, so measure against |f_u| |f_theta|
    double scale = std::hypot(fu[0], fu[1], fu[2]) * std::hypot(ft[0], ft[1], ft[2]) + 1e-3;
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(fd[k] - j[k]) / scale);
  }
  return worst;
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

void check_surface(Checker& c, const GalleryEntry& e, unsigned seed) {
  const std::string& name = e.name;
  auto fold = verify_fold_type(e.raw, 256);
  bool fold_ok = fold.passed() == e.expected.fold_type && fold.ends_on_circle == e.expected.ends_on_circle &&
                 fold.fold_condition_ok == e.expected.fold_condition;
  c.report(name, "fold-type", fold_ok, e.expected.fold_type ? "" : "expected failure reproduced");
  if (!e.is_kobayashi()) return;
  const auto& d = *e.data;
  double per = period_check(d);
  c.report(name, "period", per < 1e-10, "max |Im residue| " + sci(per));
  if (d.principal && d.angular.distinct()) {
    auto pc = principal_coefficients(d.angular);
    double m = std::max({std::abs(pc.residue_sums[0]), std::abs(pc.residue_sums[1]), std::abs(pc.residue_sums[2])});
    c.report(name, "residue-sums", m < 1e-12, sci(m));
  }
  Surface s(d);
  if (s.method() != EvalMethod::Quadrature) {
    double worst = 0;
    for (const auto& p : check_points(s.domain(), 12, seed, 1e-3)) {
      auto a = s.eval(p), b = s.eval_by_quadrature(p);
      worst = std::max(worst, distance(a, b) / (1 + distance(a, {})));
    }
    c.report(name, "closed-form-vs-quadrature", worst < 1e-8, sci(worst));
  }
  double fd = jacobian_fd_error(s, seed);
  c.report(name, "jacobian-fd", fd < 1e-6, sci(fd));
  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> R(0.1, 0.9), T(0, 2 * pi);
    double worst = 0;
    for (int k = 0; k < 8; ++k) {
      cplx z = std::polar(R(rng), T(rng));
      auto a = eval_on_disk(d, z), b = eval_on_disk(d, 1.0 / std::conj(z));
      worst = std::max(worst, distance(a, b));
    }
    c.report(name, "fold-symmetry", worst < 1e-8, sci(worst));
  }
  if (e.implicit_form) {
    double worst = 0;
    for (const auto& p : check_points(s.domain(), 100, seed, 1e-2)) worst = std::max(worst, implicit_residual(e, s.eval(p)));
    c.report(name, "implicit-form", worst < 1e-9, sci(worst));
  }
  if (e.entire_graph()) {
    GraphInverter inv(s, {.certified = e.expected.certified_graph});
    double worst = 0;
    for (double x : {-1.0, 0.0, 1.0})
      for (double y : {-1.0, 0.0, 1.0}) worst = std::max(worst, inv.invert(x, y).residual);
    c.report(name, "graph-inversion", worst < 1e-8, sci(worst));
  }
  if (e.expected.self_intersecting || e.entire_graph()) {
    auto col = injectivity_scan(s, {.resolution = 200});
    bool ok = e.expected.self_intersecting ? !col.empty() : col.empty();
    c.report(name, "injectivity-scan", ok, std::to_string(col.size()) + " colliding triangle pairs");
  }
}

// principal data with every gap strictly below pi/(n-1)
AngularData random_graph_angles(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ur(0.05, 1.0);
  while (true) {
    std::vector<double> g(2 * n);
    double sum = 0;
    for (auto& x : g) sum += (x = ur(rng));
    std::vector<double> a{0};
    bool ok = true;
    for (int j = 0; j < 2 * n; ++j) {
      double gap = g[j] * 2 * pi / sum;
      ok = ok && gap < pi / (n - 1);
      if (j + 1 < 2 * n) a.push_back(a.back() + gap);
    }
    if (ok) return AngularData::from_radians(n, a);
  }
}

}  // namespace

int cmd_check(const std::vector<LoadedSurface>& surfaces, const CheckOptions& opt, std::ostream& out) {
  Checker c{out};
  for (const auto& s : surfaces) check_surface(c, s.entry, opt.seed);
  std::mt19937_64 rng(opt.seed);
  for (int k = 0; k < opt.random_surfaces; ++k) {
    int n = 2 + k % 4;
    auto ang = random_graph_angles(n, rng);
    auto d = build(ang, {});
    const std::string name = "random-" + std::to_string(k) + "(n=" + std::to_string(n) + ")";
    auto pc = principal_coefficients(ang);
    double m = std::max({std::abs(pc.residue_sums[0]), std::abs(pc.residue_sums[1]), std::abs(pc.residue_sums[2])});
    c.report(name, "residue-sums", m < 1e-12, sci(m));
    double per = period_check(d);
    c.report(name, "period", per < 1e-10, sci(per));
    double fd = jacobian_fd_error(Surface(d), opt.seed + k);
    c.report(name, "jacobian-fd", fd < 1e-6, sci(fd));
  }
  out << (c.failures == 0 ? "all checks passed" : std::to_string(c.failures) + " check(s) failed") << '\n';
  return c.failures == 0 ? kOk : kNumericFailure;
}

// ------------------------------------------------------------------ reduce

int cmd_reduce(const std::vector<double>& coeffs, int m, ReciprocalParity parity, std::ostream& out) {
  std::vector<cplx> c(coeffs.begin(), coeffs.end());
  out << reduce_reciprocal(ComplexPoly(c), m, parity).to_string() << '\n';
  return kOk;
}

// --------------------------------------------------------------------- run

namespace {

struct InputFlags {
  std::string gallery, input;
};

void add_input(CLI::App* app, InputFlags& f) {
  auto* g = app->add_option("-g,--gallery", f.gallery, "gallery entry, name or name:n");
  auto* i = app->add_option("-i,--input", f.input, "JSON surface document ('-' for stdin)");
  g->excludes(i);
}

LoadedSurface load(const InputFlags& f) {
  if (!f.gallery.empty()) return load_gallery(f.gallery);
  if (!f.input.empty()) return load_json_file(f.input);
  throw Error(ErrorKind::InvalidInput, "give a surface with --gallery or --input");
}

int write_out(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  f << text;
  if (!f) throw Error(ErrorKind::InvalidInput, "write to '" + path + "' failed");
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"zmc: zero mean curvature surfaces with fold singularities and their analytic extension"};
  app.require_subcommand(1);

  InputFlags cls_in, smp_in, gr_in, chk_in;
  bool as_json = false;
  auto* cls = app.add_subcommand("classify", "fold-type, period, graph and immersion report");
  add_input(cls, cls_in);
  cls->add_flag("--json", as_json, "machine-readable report");

  SampleOptions so;
  std::string fmt = "obj", t_axis = "first", smp_out;
  int smp_res = 0;
  double smp_margin = 0, smp_umax = 0;
  auto* smp = app.add_subcommand("sample", "sample the extended surface over the extension domain");
  add_input(smp, smp_in);
  smp->add_option("-f,--format", fmt, "obj, ply or csv")->check(CLI::IsMember({"obj", "ply", "csv"}));
  smp->add_option("-o,--out", smp_out, "output path (default stdout)");
  smp->add_option("-r,--resolution", smp_res, "vertices per grid side")->check(CLI::Range(3, 100000));
  smp->add_option("--margin", smp_margin, "smallest clearance above the boundary")->check(CLI::PositiveNumber);
  smp->add_option("--u-max", smp_umax, "outermost ring")->check(CLI::Range(1.0 + 1e-9, 1e12));
  smp->add_option("--t-axis", t_axis, "OBJ/PLY component for t: first (v t x y), second (v x t y), third (v x y t)")
      ->check(CLI::IsMember({"first", "second", "third"}));

  GraphOptions go;
  std::vector<double> xr, yr;
  std::string gr_out;
  auto* gr = app.add_subcommand("graph", "tabulate t = lambda(x, y) for an entire graph");
  add_input(gr, gr_in);
  gr->add_option("--x-range", xr, "xmin,xmax")->delimiter(',')->expected(2);
  gr->add_option("--y-range", yr, "ymin,ymax")->delimiter(',')->expected(2);
  gr->add_option("-r,--resolution", go.resolution, "samples per axis")->check(CLI::Range(2, 100000));
  gr->add_option("-o,--out", gr_out, "output path (default stdout)");

  CheckOptions co;
  bool all_gallery = false;
  auto* chk = app.add_subcommand("check", "run the invariant suite");
  add_input(chk, chk_in);
  chk->add_flag("--all-gallery", all_gallery, "every gallery entry");
  chk->add_option("--seed", co.seed, "seed for sampled points and random data");
  chk->add_option("--random", co.random_surfaces, "number of random principal surfaces")->check(CLI::Range(0, 1000));

  std::vector<double> coeffs;
  int red_m = 0;
  std::string parity = "self";
  auto* red = app.add_subcommand("reduce", "Chebyshev form of a (anti-)self-reciprocal polynomial");
  red->add_option("--coeffs", coeffs, "a_0,...,a_2m (constant term first)")->delimiter(',')->required();
  red->add_option("-m", red_m, "half order")->required();
  red->add_option("--parity", parity, "self or anti")->check(CLI::IsMember({"self", "anti"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*cls) return cmd_classify(load(cls_in), as_json, out);
    if (*smp) {
      so.format = fmt == "ply" ? SampleOptions::Format::Ply : fmt == "csv" ? SampleOptions::Format::Csv : SampleOptions::Format::Obj;
      so.t_axis = t_axis == "second" ? TAxis::Second : t_axis == "third" ? TAxis::Third : TAxis::First;
      if (smp_res) so.resolution = smp_res;
      if (smp_margin > 0) so.margin = smp_margin;
      if (smp_umax > 0) so.u_max = smp_umax;
      std::ostringstream buf;
      cmd_sample(load(smp_in), so, buf);
      return write_out(smp_out, buf.str(), out);
    }
    if (*gr) {
      if (!xr.empty()) go.x_min = xr[0], go.x_max = xr[1];
      if (!yr.empty()) go.y_min = yr[0], go.y_max = yr[1];
      std::ostringstream buf;
      cmd_graph(load(gr_in), go, buf);
      return write_out(gr_out, buf.str(), out);
    }
    if (*chk) {
      std::vector<LoadedSurface> list;
      if (all_gallery) {
        for (const auto& name : {"scherk:2", "scherk:3", "scherk:4", "jorge-meeks:2", "jorge-meeks:3", "ruled-enneper",
                                 "parabolic", "helicoid", "elliptic-catenoid", "self-intersecting-fb",
                                 "self-intersecting-n3"})
          list.push_back(load_gallery(name));
      }
      if (!chk_in.gallery.empty() || !chk_in.input.empty()) list.push_back(load(chk_in));
      return cmd_check(list, co, out);
    }
    if (*red) return cmd_reduce(coeffs, red_m, parity == "anti" ? ReciprocalParity::Anti : ReciprocalParity::Self, out);
  } catch (const Error& e) {
    err << "zmc: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "zmc: internal error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kInputError;
}

}  // namespace zmc::cli
