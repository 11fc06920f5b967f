#include "zmc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "zmc/parallel.hpp"

namespace zmc {

using std::numbers::pi;

// ----------------------------------------------------------------- Jacobians

namespace {

// prod over all 2n angles of (u - cos(theta - alpha_j)), with multiplicity
double angle_product(const Surface& s, const ExtendedPoint& p) {
  auto d = s.domain().clearances(p);
  double prod = 1;
  for (size_t j = 0; j < d.size(); ++j) {
    if (!(d[j] >= kMinClearance)) throw Error(ErrorKind::OutsideDomain, "point outside the extension domain");
    prod *= std::pow(d[j], s.data().angular.multiplicities()[j]);
  }
  return prod;
}

}  // namespace

std::array<double, 3> jacobians_from_oneforms(const Surface& s, const ExtendedPoint& p) {
  if (p.is_infinity()) throw Error(ErrorKind::OutsideDomain, "(u, theta) Jacobians are singular at p_inf");
  angle_product(s, p);
  const auto& f = s.oneforms();
  auto v = f.numerators(p.u(), p.theta());
  double den = f.denominator(p);
  double d2 = den * den;
  return {(v.x[1] * v.y[2] - v.x[2] * v.y[1]) / d2, (v.x[0] * v.y[1] - v.x[1] * v.y[0]) / d2,
          (v.x[0] * v.y[2] - v.x[2] * v.y[0]) / d2};
}

double jacobian_x1x2(const Surface& s, const ExtendedPoint& p) {
  if (!s.data().principal) return jacobians_from_oneforms(s, p)[0];
  if (p.is_infinity()) throw Error(ErrorKind::OutsideDomain, "(u, theta) Jacobians are singular at p_inf");
  const int n = s.n();
  double prod = angle_product(s, p);
  return cheb_U(2 * n - 3, p.u()) / (std::ldexp(1.0, 2 * n - 1) * prod);
}

std::pair<double, double> jacobians_x0(const Surface& s, const ExtendedPoint& p) {
  if (!s.data().principal) {
    auto j = jacobians_from_oneforms(s, p);
    return {j[1], j[2]};
  }
  if (p.is_infinity()) throw Error(ErrorKind::OutsideDomain, "(u, theta) Jacobians are singular at p_inf");
  const int n = s.n();
  double prod = angle_product(s, p);
  double c = cheb_U(n - 2, p.u()) / (std::ldexp(1.0, 2 * n - 2) * prod);
  return {c * std::sin((n - 1) * p.theta()), -c * std::cos((n - 1) * p.theta())};
}

// ---------------------------------------------------------------- conditions

const char* to_string(ConditionStatus c) {
  switch (c) {
    case ConditionStatus::StrictlySatisfied: return "StrictlySatisfied";
    case ConditionStatus::BoundaryCase: return "BoundaryCase";
    case ConditionStatus::Violated: return "Violated";
  }
  return "?";
}

namespace {

// status of "every gap <= bound" and the first violating gap
std::pair<ConditionStatus, int> classify_gaps(const AngularData& a, long long bound_num, long long bound_den,
                                              bool& exact) {
  auto status = ConditionStatus::StrictlySatisfied;
  if (auto eg = a.exact_gaps()) {
    exact = true;
    PiFraction bound{bound_num, bound_den};
    for (size_t j = 0; j < eg->size(); ++j) {
      if (bound < (*eg)[j]) return {ConditionStatus::Violated, static_cast<int>(j)};
      if ((*eg)[j] == bound) status = ConditionStatus::BoundaryCase;
    }
    return {status, -1};
  }
  exact = false;
  double bound = pi * static_cast<double>(bound_num) / static_cast<double>(bound_den);
  auto g = a.gaps();
  for (size_t j = 0; j < g.size(); ++j) {
    if (g[j] > bound + 1e-12) return {ConditionStatus::Violated, static_cast<int>(j)};
    if (std::abs(g[j] - bound) <= 1e-12) status = ConditionStatus::BoundaryCase;
  }
  return {status, -1};
}

// midpoint of gap j, measured from alpha_j
double gap_midpoint(const AngularData& a, int j) {
  double lo = a.alphas()[j];
  double g = a.gaps()[j];
  double m = lo + g / 2;
  return m >= 2 * pi ? m - 2 * pi : m;
}

}  // namespace

ConditionReport check_conditions(const AngularData& angular, bool principal) {
  ConditionReport r;
  const int n = angular.n();
  r.distinct_angles = angular.distinct();
  auto [g1, j1] = classify_gaps(angular, 1, n - 1, r.exact_arithmetic);
  auto [g2, j2] = classify_gaps(angular, 2, n - 1, r.exact_arithmetic);
  r.graph_condition = g1;
  r.immersion_condition = g2;
  r.graph_violated_gap = j1;
  r.immersion_violated_gap = j2;
  // rotating the violated gap to start at 0 puts the critical point at its midpoint
  if (g1 == ConditionStatus::Violated) {
    if (principal)
      r.graph_witness = Witness{std::cos(pi / (2.0 * (n - 1))), gap_midpoint(angular, j1)};
    else
      r.witness_unknown = true;
  }
  if (g2 == ConditionStatus::Violated) {
    if (principal)
      r.immersion_witness = Witness{std::cos(pi / (n - 1)), gap_midpoint(angular, j2)};
    else
      r.witness_unknown = true;
  }
  return r;
}

// ----------------------------------------------------------------- inversion

bool graph_precondition(const Surface& s, bool certified) {
  if (certified) return true;
  auto c = check_conditions(s.data().angular, s.data().principal);
  return c.distinct_angles && c.graph_condition != ConditionStatus::Violated;
}

namespace {

std::string precondition_message(const Surface& s) {
  auto c = check_conditions(s.data().angular, s.data().principal);
  const int n = s.n();
  std::ostringstream os;
  if (c.graph_condition == ConditionStatus::Violated) {
    int j = c.graph_violated_gap;
    os << "graph condition violated: alpha_" << j + 1 << " - alpha_" << j << " = " << s.data().angular.gaps()[j]
       << " > pi/(n-1) = " << pi / (n - 1);
  } else {
    os << "graph inversion requires distinct angles unless the surface is certified as an entire graph";
  }
  return os.str();
}

struct Step {
  ExtendedPoint p;
  SurfacePoint f;
  double norm;
};

}  // namespace

GraphInverter::GraphInverter(const Surface& s, InverterOptions opt) : s_(s), opt_(opt) {
  if (!graph_precondition(s, opt.certified)) throw Error(ErrorKind::PreconditionUnmet, precondition_message(s));
  if (opt_.cold_start) return;
  const int nth = 128;
  std::vector<double> levels;
  for (int k = 0; k <= 44; ++k) levels.push_back(std::pow(10.0, -11.0 + 0.25 * k));
  for (double u : {3.0, 5.0, 10.0, 30.0, 100.0}) levels.push_back(-u);  // negative marks an absolute u
  std::vector<std::vector<CacheEntry>> rows(nth);
  parallel_for(nth, [&](size_t i) {
    double th = 2 * pi * (static_cast<double>(i) + 0.5) / nth;
    for (double lv : levels) {
      ExtendedPoint p = lv > 0 ? s_.domain().at_clearance(th, lv) : ExtendedPoint::finite(-lv, th);
      if (lv > 0 && p.u() > 3.0) continue;
      auto f = s_.eval(p);
      rows[i].push_back({f.x, f.y, p});
    }
  });
  auto f_inf = s_.eval(ExtendedPoint::infinity());
  cache_.push_back({f_inf.x, f_inf.y, ExtendedPoint::infinity()});
  for (auto& r : rows) cache_.insert(cache_.end(), r.begin(), r.end());
}

std::optional<GraphPoint> GraphInverter::newton(double x, double y, ExtendedPoint start, int max_iter) const {
  const auto& dom = s_.domain();
  auto evaluate = [&](const ExtendedPoint& p) -> std::optional<Step> {
    if (!p.is_infinity()) {
      if (!dom.contains(p) || dom.boundary_distance(p) < kMinClearance) return std::nullopt;
    }
    try {
      auto f = s_.eval(p);
      double r = std::hypot(f.x - x, f.y - y);
      if (!std::isfinite(r)) return std::nullopt;
      return Step{p, f, r};
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  auto cur = evaluate(start);
  if (!cur) return std::nullopt;
  const double tol = opt_.tolerance;
  int polish = 0;
  for (int it = 0; it < max_iter; ++it) {
    const ExtendedPoint& p = cur->p;
    const double rx = cur->f.x - x, ry = cur->f.y - y;
    bool chart_ab = p.is_infinity() || p.u() >= 3.0;
    double j11, j12, j21, j22;
    double th = p.is_infinity() ? 0.0 : p.theta();
    int anchor = -1;
    double c = 0;
    if (chart_ab) {
      auto d = s_.chart_partials(p);
      j11 = d[0][1], j12 = d[1][1], j21 = d[0][2], j22 = d[1][2];
    } else {
      ExtendedPoint q = p.anchored() ? p : dom.at_clearance(p.theta(), dom.boundary_distance(p));
      anchor = q.anchor();
      c = q.anchor_clearance();
      auto d = s_.partials(q);
      double sn = std::sin(th - s_.data().angular.betas()[anchor]);
      j11 = d[1][1] - d[0][1] * sn, j12 = d[0][1] * c;
      j21 = d[1][2] - d[0][2] * sn, j22 = d[0][2] * c;
    }
    double det = j11 * j22 - j12 * j21;
    if (!(std::abs(det) > 0) || !std::isfinite(det)) return std::nullopt;
    double d1 = -(j22 * rx - j12 * ry) / det;
    double d2 = -(-j21 * rx + j11 * ry) / det;
    double cap = chart_ab ? 0.5 / std::max(0.5, std::hypot(d1, d2)) : std::min({1.0, 0.5 / std::abs(d1), 3.0 / std::abs(d2)});
    if (std::isfinite(cap) && cap < 1) d1 *= cap, d2 *= cap;
    std::optional<Step> next;
    for (double t = 1; t > 1e-12; t *= 0.5) {
      ExtendedPoint q;
      if (chart_ab) {
        double a = p.is_infinity() ? 0.0 : std::cos(th) / p.u();
        double b = p.is_infinity() ? 0.0 : std::sin(th) / p.u();
        a += t * d1;
        b += t * d2;
        double rho = std::hypot(a, b);
        q = rho == 0 ? ExtendedPoint::infinity() : ExtendedPoint::finite(1 / rho, wrap_angle(std::atan2(b, a)));
      } else {
        q = dom.from_anchor(th + t * d1, anchor, c * std::exp(t * d2));
        if (!(q.anchor_clearance() >= kMinClearance)) continue;
      }
      auto e = evaluate(q);
      if (e && e->norm < cur->norm) {
        next = e;
        break;
      }
    }
    if (!next) break;
    cur = next;
    if (cur->norm < tol && ++polish > 3) break;
  }
  if (!(cur->norm < tol)) return std::nullopt;
  return GraphPoint{cur->p, cur->f.t, cur->norm, 0};
}

GraphPoint GraphInverter::homotopy(double x, double y) const {
  ExtendedPoint start = ExtendedPoint::finite(2.0, 0.0);
  if (!opt_.cold_start) {
    double best = HUGE_VAL;
    for (const auto& e : cache_) {
      double d = std::hypot(e.x - x, e.y - y);
      if (d < best) best = d, start = e.p;
    }
  }
  auto f0 = s_.eval(start);
  for (int steps = 8; steps <= 4096; steps *= 4) {
    ExtendedPoint p = start;
    bool ok = true;
    for (int k = 1; k <= steps && ok; ++k) {
      double s = static_cast<double>(k) / steps;
      auto r = newton(f0.x + s * (x - f0.x), f0.y + s * (y - f0.y), p, 40);
      if (r)
        p = r->p;
      else
        ok = false;
    }
    if (ok) {
      if (auto r = newton(x, y, p, 40)) return *r;
    }
  }
  std::ostringstream os;
  os << "graph inversion did not converge at (" << x << ", " << y << ")";
  throw Error(ErrorKind::NoConvergence, os.str());
}

GraphPoint GraphInverter::invert(double x, double y) const {
  if (!opt_.cold_start) {
    const CacheEntry* best = nullptr;
    double bd = HUGE_VAL;
    for (const auto& e : cache_) {
      double dx = e.x - x, dy = e.y - y, d = dx * dx + dy * dy;
      if (d < bd) bd = d, best = &e;
    }
    if (best) {
      if (auto r = newton(x, y, best->p, 80)) return *r;
    }
  }
  return homotopy(x, y);
}

GraphPoint invert_graph(const Surface& s, double x, double y, InverterOptions opt) {
  opt.cold_start = true;
  return GraphInverter(s, opt).invert(x, y);
}

double zmc_residual(const std::function<double(double, double)>& l, double x, double y, double h) {
  double c = l(x, y);
  double xp = l(x + h, y), xm = l(x - h, y), yp = l(x, y + h), ym = l(x, y - h);
  double pp = l(x + h, y + h), pm = l(x + h, y - h), mp = l(x - h, y + h), mm = l(x - h, y - h);
  double lx = (xp - xm) / (2 * h), ly = (yp - ym) / (2 * h);
  double lxx = (xp - 2 * c + xm) / (h * h), lyy = (yp - 2 * c + ym) / (h * h);
  double lxy = (pp - pm - mp + mm) / (4 * h * h);
  return (1 - ly * ly) * lxx + 2 * lx * ly * lxy + (1 - lx * lx) * lyy;
}

double zmc_residual(const GraphInverter& inv, double x, double y, double h) {
  return zmc_residual([&](double a, double b) { return inv.invert(a, b).lambda; }, x, y, h);
}

std::pair<double, double> graph_gradient(const std::function<double(double, double)>& l, double x, double y,
                                         double h) {
  return {(l(x + h, y) - l(x - h, y)) / (2 * h), (l(x, y + h) - l(x, y - h)) / (2 * h)};
}

std::pair<double, double> psi_map(double u, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  double d = u - c;
  if (!(d > 0)) throw Error(ErrorKind::OutsideDomain, "psi map requires u > cos theta");
  return {c / d, s / d};
}

// ---------------------------------------------------------------- injectivity

namespace {

using P3 = std::array<double, 3>;

P3 sub(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
P3 cross(const P3& a, const P3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// proper crossing of segment [p, q] with the interior of triangle (a, b, c)
bool segment_hits(const P3& p, const P3& q, const P3& a, const P3& b, const P3& c) {
  P3 dir = sub(q, p), e1 = sub(b, a), e2 = sub(c, a);
  P3 h = cross(dir, e2);
  double det = dot(e1, h);
  double scale = std::sqrt(dot(dir, dir) * dot(e1, e1) * dot(e2, e2));
  if (std::abs(det) <= 1e-12 * scale) return false;
  double inv = 1 / det;
  P3 s = sub(p, a);
  double bu = dot(s, h) * inv;
  if (bu <= 0 || bu >= 1) return false;
  P3 qv = cross(s, e1);
  double bv = dot(dir, qv) * inv;
  if (bv <= 0 || bu + bv >= 1) return false;
  double t = dot(e2, qv) * inv;
  return t > 0 && t < 1;
}

bool triangles_intersect(const std::array<P3, 3>& t, const std::array<P3, 3>& s) {
  for (int k = 0; k < 3; ++k) {
    if (segment_hits(t[k], t[(k + 1) % 3], s[0], s[1], s[2])) return true;
    if (segment_hits(s[k], s[(k + 1) % 3], t[0], t[1], t[2])) return true;
  }
  return false;
}

}  // namespace

std::vector<Collision> injectivity_scan(const Mesh& m, const InjectivityOptions& opt) {
  const auto quads = m.quads();
  std::vector<std::array<int, 3>> tris;
  tris.reserve(quads.size() * 2);
  for (const auto& q : quads) {
    tris.push_back({q[0], q[1], q[2]});
    tris.push_back({q[0], q[2], q[3]});
  }
  const size_t nt = tris.size();
  std::vector<std::array<double, 2>> chart(m.params.size());
  for (size_t k = 0; k < m.params.size(); ++k) {
    const auto& p = m.params[k];
    chart[k] = {std::cos(p.theta()) / p.u(), std::sin(p.theta()) / p.u()};
  }
  std::vector<P3> pos(m.points.size());
  for (size_t k = 0; k < pos.size(); ++k) pos[k] = m.points[k].vec();

  // hierarchical grid: a triangle lives at the level whose cell size covers its extent
  std::vector<std::array<double, 6>> box(nt);
  std::vector<double> ext(nt);
  for (size_t i = 0; i < nt; ++i) {
    auto& b = box[i];
    b = {HUGE_VAL, HUGE_VAL, HUGE_VAL, -HUGE_VAL, -HUGE_VAL, -HUGE_VAL};
    for (int v : tris[i])
      for (int k = 0; k < 3; ++k) {
        b[k] = std::min(b[k], pos[v][k]);
        b[k + 3] = std::max(b[k + 3], pos[v][k]);
      }
    ext[i] = std::max({b[3] - b[0], b[4] - b[1], b[5] - b[2]});
  }
  std::vector<double> sorted = ext;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double base = std::max(sorted[sorted.size() / 2], 1e-12);
  constexpr int kLevels = 48;
  std::vector<int> level(nt, -1);
  for (size_t i = 0; i < nt; ++i) {
    if (!std::isfinite(ext[i])) continue;
    int l = 0;
    while (l + 1 < kLevels && ext[i] > std::ldexp(base, l)) ++l;
    level[i] = l;
  }
  auto key = [](long long i, long long j, long long k) {
    return static_cast<unsigned long long>((i & 0x1fffff) | ((j & 0x1fffff) << 21) | ((k & 0x1fffff) << 42));
  };
  auto cell_range = [&](size_t i, int l, long long lo[3], long long hi[3]) {
    double cell = std::ldexp(base, l);
    for (int k = 0; k < 3; ++k) {
      lo[k] = static_cast<long long>(std::floor(box[i][k] / cell));
      hi[k] = static_cast<long long>(std::floor(box[i][k + 3] / cell));
    }
  };
  std::vector<std::unordered_map<unsigned long long, std::vector<int>>> grid(kLevels);
  for (size_t i = 0; i < nt; ++i) {
    if (level[i] < 0) continue;
    long long lo[3], hi[3];
    cell_range(i, level[i], lo, hi);
    for (long long a = lo[0]; a <= hi[0]; ++a)
      for (long long c = lo[1]; c <= hi[1]; ++c)
        for (long long d = lo[2]; d <= hi[2]; ++d) grid[level[i]][key(a, c, d)].push_back(static_cast<int>(i));
  }

  const double tp2 = opt.tol_param * opt.tol_param;
  auto excluded = [&](int i, int j) {
    for (int a : tris[i])
      for (int b : tris[j]) {
        if (a == b) return true;
        double dx = chart[a][0] - chart[b][0], dy = chart[a][1] - chart[b][1];
        if (dx * dx + dy * dy < tp2) return true;
      }
    return false;
  };
  auto boxes_overlap = [&](int i, int j) {
    for (int k = 0; k < 3; ++k)
      if (box[i][k] > box[j][k + 3] || box[j][k] > box[i][k + 3]) return false;
    return true;
  };

  // each pair is found by its lower-level member (the lower index on ties)
  std::vector<std::vector<int>> partners(nt);
  parallel_for(nt, [&](size_t i) {
    if (level[i] < 0) return;
    auto& out = partners[i];
    for (int l = level[i]; l < kLevels; ++l) {
      if (grid[l].empty()) continue;
      long long lo[3], hi[3];
      cell_range(i, l, lo, hi);
      for (long long a = lo[0]; a <= hi[0]; ++a)
        for (long long c = lo[1]; c <= hi[1]; ++c)
          for (long long d = lo[2]; d <= hi[2]; ++d) {
            auto it = grid[l].find(key(a, c, d));
            if (it == grid[l].end()) continue;
            for (int j : it->second) {
              if (l == level[i] && j <= static_cast<int>(i)) continue;
              out.push_back(j);
            }
          }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::erase_if(out, [&](int j) { return !boxes_overlap(static_cast<int>(i), j) || excluded(static_cast<int>(i), j); });
  });
  std::vector<std::pair<int, int>> candidates;
  for (size_t i = 0; i < nt; ++i)
    for (int j : partners[i]) candidates.emplace_back(std::min<int>(i, j), std::max<int>(i, j));
  std::sort(candidates.begin(), candidates.end());

  std::vector<char> hit(candidates.size(), 0);
  parallel_for(candidates.size(), [&](size_t c) {
    auto [i, j] = candidates[c];
    std::array<P3, 3> t{pos[tris[i][0]], pos[tris[i][1]], pos[tris[i][2]]};
    std::array<P3, 3> s{pos[tris[j][0]], pos[tris[j][1]], pos[tris[j][2]]};
    hit[c] = triangles_intersect(t, s);
  });

  auto centroid_param = [&](int t) {
    double a = 0, b = 0;
    for (int v : tris[t]) a += chart[v][0] / 3, b += chart[v][1] / 3;
    double rho = std::hypot(a, b);
    return ExtendedPoint::finite(1 / rho, wrap_angle(std::atan2(b, a)));
  };
  std::vector<Collision> out;
  for (size_t c = 0; c < candidates.size() && out.size() < opt.max_reports; ++c) {
    if (!hit[c]) continue;
    auto [i, j] = candidates[c];
    P3 w{};
    for (int v : tris[i])
      for (int k = 0; k < 3; ++k) w[k] += pos[v][k] / 3;
    out.push_back({centroid_param(i), centroid_param(j), SurfacePoint::from(w)});
  }
  return out;
}

std::vector<Collision> injectivity_scan(const Surface& s, const InjectivityOptions& opt) {
  GridOptions g;
  g.res_theta = opt.resolution;
  g.res_u = opt.resolution;
  g.margin = opt.margin;
  g.u_max = opt.u_max;
  return injectivity_scan(sample_grid(s, g, false), opt);
}

// ------------------------------------------------------------- classification

std::vector<Umbilic> umbilics(const KobayashiData& data) {
  ComplexPoly dg = data.P.derivative() * data.R - data.P * data.R.derivative();
  std::vector<Umbilic> out;
  if (dg.degree() == 0) return out;
  auto roots = poly_roots(dg);
  std::vector<cplx> inside;
  for (cplx r : roots)
    if (std::abs(r) < 1 - 1e-9) inside.push_back(r);
  for (const auto& c : cluster_roots(inside, 1e-4)) out.push_back({c.location, c.multiplicity});
  std::sort(out.begin(), out.end(), [](const Umbilic& a, const Umbilic& b) {
    return a.location.real() != b.location.real() ? a.location.real() < b.location.real()
                                                   : a.location.imag() < b.location.imag();
  });
  return out;
}

ClassificationReport classify(const KobayashiData& data) {
  ClassificationReport r;
  r.fold = verify_fold_type(data, 256);
  r.period_residual = period_check(data);
  r.principal = data.principal;
  r.conditions = check_conditions(data.angular, data.principal);
  r.conditions.umbilics = umbilics(data);
  r.ends = data.ends;
  if (data.angular.distinct())
    r.method = data.principal ? EvalMethod::Principal : EvalMethod::GeneralDistinct;
  else
    r.method = degenerate_pattern(data.angular) ? EvalMethod::DegenerateN2 : EvalMethod::Quadrature;
  r.entire_graph = r.conditions.distinct_angles && r.conditions.graph_condition != ConditionStatus::Violated;
  return r;
}

}  // namespace zmc
