// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli/commands.hpp"
#include "zmc/analysis.hpp"
#include "zmc/gallery.hpp"

using namespace zmc;
using std::numbers::pi;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = dt < budget_s;
  bool ok = o.ok && in_time;
  if (!ok) ++failures;
  std::printf("%s %2d %s: %s (%.2fs of %.0fs)%s\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), dt, budget_s,
              in_time ? "" : " over budget");
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

AngularData random_principal(int n, double max_gap, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ur(0.05, 1.0);
  while (true) {
    std::vector<double> g(2 * n);
    double sum = 0;
    for (auto& x : g) sum += (x = ur(rng));
    bool ok = true;
    std::vector<double> a{0};
    for (int j = 0; j < 2 * n; ++j) {
      double gap = g[j] * 2 * pi / sum;
      ok = ok && gap < max_gap;
      if (j + 1 < 2 * n) a.push_back(a.back() + gap);
    }
    if (ok) return AngularData::from_radians(n, a);
  }
}

std::vector<ExtendedPoint> omega_points(const ExtensionDomain& dom, int count, unsigned seed, double min_clearance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> th(0, 2 * pi), lc(std::log(min_clearance), std::log(3.0));
  std::vector<ExtendedPoint> out;
  for (int k = 0; k < count; ++k) out.push_back(dom.at_clearance(th(rng), std::exp(lc(rng))));
  return out;
}

std::vector<GalleryEntry> kobayashi_entries() {
  std::vector<GalleryEntry> out;
  for (auto name : {"scherk:2", "scherk:3", "scherk:4", "jorge-meeks:2", "jorge-meeks:3", "ruled-enneper",
                    "parabolic", "self-intersecting-fb", "self-intersecting-n3"})
    out.push_back(gallery_lookup(name));
  return out;
}

double diff(const SurfacePoint& a, const SurfacePoint& b) {
  return std::max({std::abs(a.t - b.t), std::abs(a.x - b.x), std::abs(a.y - b.y)});
}
double mag(const SurfacePoint& a) { return std::max({std::abs(a.t), std::abs(a.x), std::abs(a.y)}); }

// fourth-order central differences of the evaluator in (u, theta)
std::array<double, 3> fd_jacobians(const Surface& s, const ExtendedPoint& p, double h) {
  auto d = [&](double du, double dt) { return s.eval(ExtendedPoint::finite(p.u() + du, p.theta() + dt)); };
  auto u2 = d(2 * h, 0), u1 = d(h, 0), um1 = d(-h, 0), um2 = d(-2 * h, 0);
  auto t2 = d(0, 2 * h), t1 = d(0, h), tm1 = d(0, -h), tm2 = d(0, -2 * h);
  double fu[3], ft[3];
  for (int k = 0; k < 3; ++k) {
    fu[k] = (-u2[k] + 8 * u1[k] - 8 * um1[k] + um2[k]) / (12 * h);
    ft[k] = (-t2[k] + 8 * t1[k] - 8 * tm1[k] + tm2[k]) / (12 * h);
  }
  return {fu[1] * ft[2] - fu[2] * ft[1], fu[0] * ft[1] - fu[1] * ft[0], fu[0] * ft[2] - fu[2] * ft[0]};
}

Outcome chebyshev_identities() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  double worst = 0;
  for (int n = 0; n <= 20; ++n)
    for (int s = 0; s < 64; ++s) {
      double r = dist(rng), u = 0.5 * (r + 1 / r);
      double a = 0.5 * (std::pow(r, n) + std::pow(r, -n));
      worst = std::max(worst, std::abs(a - cheb_T(n, u)) / std::abs(a));
      if (n >= 1) {
        double b = 0.5 * (std::pow(r, n) - std::pow(r, -n));
        double c = 0.5 * (r - 1 / r) * cheb_U(n - 1, u);
        worst = std::max(worst, std::abs(b - c) / std::max(std::abs(b), 1e-300));
      }
    }
  return {worst < 1e-10, "max relative error " + sci(worst)};
}

Outcome reduction_round_trip() {
  std::mt19937_64 rng(102);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(0.1, 10);
  std::uniform_int_distribution<int> mdist(1, 8);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto parity = trial % 2 ? ReciprocalParity::Anti : ReciprocalParity::Self;
    int m = mdist(rng);
    // p(r) = r^{2m} phat(1/r) +- phat(r), degree 2m <= 16
    std::vector<cplx> c(2 * m + 1);
    for (int j = 0; j <= m; ++j) {
      cplx h{nd(rng), nd(rng)};
      c[2 * m - j] += h;
      c[j] += parity == ReciprocalParity::Self ? h : -h;
    }
    ComplexPoly p(c);
    auto q = reduce_reciprocal(p, m, parity);
    for (int s = 0; s < 32; ++s) {
      double r = ur(rng), u = 0.5 * (r + 1 / r);
      cplx lhs = p(r);
      cplx rhs = std::pow(r, m) * q(u) * (parity == ReciprocalParity::Self ? 1.0 : 0.5 * (r - 1 / r));
      double scale = 0;
      for (int j = 0; j <= 2 * m; ++j) scale += std::abs(c[j]) * std::pow(r, j);
      worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
  }
  return {worst < 1e-10, "max relative error " + sci(worst)};
}

std::vector<AngularData> random_set() {
  std::mt19937_64 rng(103);
  std::vector<AngularData> out;
  for (int k = 0; k < 50; ++k) {
    int n = 2 + k % 5;
    out.push_back(random_principal(n, 2 * pi, rng));
  }
  return out;
}

Outcome residue_identities() {
  double worst = 0;
  for (const auto& a : random_set()) {
    auto c = principal_coefficients(a);
    for (double s : c.residue_sums) worst = std::max(worst, std::abs(s));
  }
  return {worst < 1e-12, "max |residue sum| " + sci(worst)};
}

Outcome period_condition() {
  double im = 0;
  for (const auto& a : random_set()) im = std::max(im, period_check(build(a, {})));
  double loop = 0;
  for (auto name : {"scherk:2", "scherk:3", "jorge-meeks:3", "parabolic", "self-intersecting-fb"}) {
    auto e = gallery_lookup(name);
    for (const auto& end : e.data->ends) loop = std::max(loop, mag(loop_displacement(*e.data, end.location, 0.05)));
  }
  return {im < 1e-10 && loop < 1e-8, "max |Im residue| " + sci(im) + ", loop displacement " + sci(loop)};
}

Outcome closed_form_identities() {
  double worst = 0;
  for (auto name : {"scherk:2", "jorge-meeks:2", "ruled-enneper", "parabolic"}) {
    auto e = gallery_lookup(name);
    Surface s(*e.data);
    for (const auto& p : omega_points(s.domain(), 100, 104, 1e-2))
      worst = std::max(worst, implicit_residual(e, s.eval(p)));
  }
  return {worst < 1e-9, "max residual " + sci(worst)};
}

Outcome cross_evaluators() {
  double worst = 0;
  for (const auto& e : kobayashi_entries()) {
    Surface s(*e.data);
    for (const auto& p : omega_points(s.domain(), 64, 105, 1e-2)) {
      auto a = s.eval(p);
      auto b = s.eval_by_quadrature(p);
      double scale = 1 + mag(a);
      worst = std::max(worst, diff(a, b) / scale);
      // the disk covers the part of the domain with u >= 1
      if (p.u() >= 1) worst = std::max(worst, diff(a, eval_on_disk(*e.data, iota_inverse(p))) / scale);
    }
  }
  return {worst < 1e-8, "max relative disagreement " + sci(worst)};
}

Outcome jacobians() {
  double worst = 0;
  for (const auto& e : kobayashi_entries()) {
    Surface s(*e.data);
    for (const auto& p : omega_points(s.domain(), 64, 106, 5e-2)) {
      auto j = jacobians_from_oneforms(s, p);
      auto cl = s.domain().clearances(p);
      auto fd = fd_jacobians(s, p, 1e-4 * std::min(1.0, *std::min_element(cl.begin(), cl.end())));
      double norm = std::hypot(j[0], j[1], j[2]);
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(fd[k] - j[k]) / norm);
    }
  }
  // critical points of the violated configurations
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> ur(0.1, 1.0);
  double wit = 0;
  int built = 0;
  for (; built < 10; ++built) {
    int n = 3 + built % 3;
    double big = built % 2 ? 2 * pi / (n - 1) + 0.2 : pi / (n - 1) + 0.2;
    std::vector<double> g(2 * n - 1);
    double sum = 0;
    for (auto& x : g) sum += (x = ur(rng));
    std::vector<double> a{0, big};
    for (int j = 0; j + 2 < 2 * n; ++j) a.push_back(a.back() + g[j] * (2 * pi - big) / sum);
    auto ang = AngularData::from_radians(n, a);
    auto rep = check_conditions(ang);
    if (!rep.graph_witness) return {false, "no witness for configuration " + std::to_string(built)};
    Surface s(build(ang, {}));
    auto w = *rep.graph_witness;
    wit = std::max(wit, std::abs(jacobian_x1x2(s, ExtendedPoint::finite(w.u, w.theta))));
    if (rep.immersion_witness) {
      auto q = ExtendedPoint::finite(rep.immersion_witness->u, rep.immersion_witness->theta);
      for (double v : jacobians_from_oneforms(s, q)) wit = std::max(wit, std::abs(v));
    }
  }
  return {worst < 1e-6 && wit < 1e-10, "max relative FD error " + sci(worst) + ", max |J| at witnesses " + sci(wit)};
}

std::vector<std::shared_ptr<Surface>> surfaces_keepalive;

Outcome graph_round_trip() {
  std::vector<AngularData> cases;
  for (int n = 2; n <= 4; ++n) cases.push_back(gallery_lookup("scherk:" + std::to_string(n)).data->angular);
  std::mt19937_64 rng(108);
  for (int k = 0; k < 5; ++k) cases.push_back(random_principal(3, pi / 2, rng));
  double res = 0, zmc = 0, wx = 0, wy = 0;
  const GraphInverter* worst = nullptr;
  std::vector<std::unique_ptr<GraphInverter>> inverters;
  for (const auto& a : cases) {
    auto s = std::make_shared<Surface>(build(a, {}));
    inverters.push_back(std::make_unique<GraphInverter>(*s));
    auto& inv = *inverters.back();
    surfaces_keepalive.push_back(s);
    for (int i = 0; i < 41; ++i)
      for (int j = 0; j < 41; ++j) {
        double x = -2 + 0.1 * i, y = -2 + 0.1 * j;
        res = std::max(res, inv.invert(x, y).residual);
        double z = std::abs(zmc_residual(inv, x, y, 1e-3));
        if (z > zmc) zmc = z, wx = x, wy = y, worst = &inv;
      }
  }
  std::string detail = "max round-trip residual " + sci(res) + ", max ZMC residual " + sci(zmc);
  if (worst) {
    // convergence order of the stencil at the worst point
    double half = std::abs(zmc_residual(*worst, wx, wy, 5e-4));
    char buf[96];
    std::snprintf(buf, sizeof buf, " at (%.1f, %.1f), observed order %.2f", wx, wy, std::log2(zmc / half));
    detail += buf;
  }
  return {res < 1e-8 && zmc < 1e-4, detail};
}

Outcome fold_symmetry() {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> R(0.05, 0.95), T(0, 2 * pi);
  double worst = 0;
  for (const auto& e : kobayashi_entries())
    for (int k = 0; k < 64; ++k) {
      cplx z = std::polar(R(rng), T(rng));
      auto a = eval_on_disk(*e.data, z), b = eval_on_disk(*e.data, 1.0 / std::conj(z));
      worst = std::max(worst, diff(a, b) / (1 + mag(a)));
    }
  return {worst < 1e-8, "max |f(z) - f(1/conj z)| " + sci(worst)};
}

Outcome negative_controls() {
  bool ok = true;
  std::string detail;
  for (auto name : {"helicoid", "elliptic-catenoid"}) {
    auto f = verify_fold_type(gallery_lookup(name).raw, 256);
    ok = ok && !f.ends_on_circle;
    detail += std::string(name) + (f.ends_on_circle ? " passes (i); " : " fails (i); ");
  }
  for (auto name : {"self-intersecting-fb", "self-intersecting-n3", "scherk:2", "scherk:3", "scherk:4", "jorge-meeks:2",
                    "parabolic"}) {
    auto e = gallery_lookup(name);
    auto hits = injectivity_scan(Surface(*e.data), {.resolution = 200});
    bool want = e.expected.self_intersecting;
    ok = ok && (want ? !hits.empty() : hits.empty());
    detail += std::string(name) + " " + std::to_string(hits.size()) + "; ";
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  auto dir = std::filesystem::temp_directory_path() / ("zmc_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto surface = cli::load_gallery("scherk:3");
  auto write = [&](const std::string& name, auto&& cmd) {
    std::ofstream out(dir / name, std::ios::binary);
    return cmd(out);
  };
  bool ok = true;
  for (int run = 0; run < 2; ++run) {
    std::string k = std::to_string(run);
    ok = ok && write("sample" + k + ".obj", [&](std::ostream& o) { return cli::cmd_sample(surface, {}, o); }) == 0;
    ok = ok && write("graph" + k + ".csv", [&](std::ostream& o) { return cli::cmd_graph(surface, {}, o); }) == 0;
  }
  bool same_sample = read_file(dir / "sample0.obj") == read_file(dir / "sample1.obj");
  bool same_graph = read_file(dir / "graph0.csv") == read_file(dir / "graph1.csv");
  auto bytes = std::filesystem::file_size(dir / "sample0.obj") + std::filesystem::file_size(dir / "graph0.csv");
  std::filesystem::remove_all(dir);
  return {ok && same_sample && same_graph && bytes > 0,
          std::string("sample ") + (same_sample ? "identical" : "differs") + ", graph " +
              (same_graph ? "identical" : "differs")};
}

}  // namespace

int main() {
  run(1, "Chebyshev identities", 1, chebyshev_identities);
  run(2, "reciprocal reduction", 5, reduction_round_trip);
  run(3, "residue identities", 1, residue_identities);
  run(4, "period condition", 10, period_condition);
  run(5, "closed-form identities", 5, closed_form_identities);
  run(6, "cross-evaluator agreement", 30, cross_evaluators);
  run(7, "Jacobian formulas", 10, jacobians);
  run(8, "entire-graph round trip", 60, graph_round_trip);
  run(9, "fold symmetry", 5, fold_symmetry);
  run(10, "negative controls", 120, negative_controls);
  run(11, "determinism", 10, determinism);
  std::printf("%s\n", failures == 0 ? "all criteria passed" : (std::to_string(failures) + " criteria failed").c_str());
  return failures == 0 ? 0 : 1;
}
