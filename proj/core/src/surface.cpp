#include "zmc/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zmc {

using std::numbers::pi;

double distance(const SurfacePoint& a, const SurfacePoint& b) {
  return std::sqrt((a.t - b.t) * (a.t - b.t) + (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y));
}

// -------------------------------------------------------------------- TrigPoly

double TrigPoly::operator()(double theta) const {
  cplx s{};
  for (size_t k = 0; k < c.size(); ++k) s += c[k] * std::polar(1.0, (lo + static_cast<int>(k)) * theta);
  return s.real();
}

double TrigPoly::eval(const std::vector<cplx>& powers, int powers_lo) const {
  double s = 0;
  for (size_t k = 0; k < c.size(); ++k) {
    const cplx& e = powers[lo + k - powers_lo];
    s += c[k].real() * e.real() - c[k].imag() * e.imag();
  }
  return s;
}

namespace {

TrigPoly combine(const TrigPoly& a, const TrigPoly& b, double sign) {
  if (a.c.empty() && b.c.empty()) return {};
  int lo = a.c.empty() ? b.lo : b.c.empty() ? a.lo : std::min(a.lo, b.lo);
  int hi = a.c.empty() ? b.hi() : b.c.empty() ? a.hi() : std::max(a.hi(), b.hi());
  TrigPoly r{lo, std::vector<cplx>(hi - lo + 1)};
  for (size_t k = 0; k < a.c.size(); ++k) r.c[a.lo + k - lo] += a.c[k];
  for (size_t k = 0; k < b.c.size(); ++k) r.c[b.lo + k - lo] += sign * b.c[k];
  return r;
}

}  // namespace

TrigPoly TrigPoly::operator+(const TrigPoly& o) const { return combine(*this, o, 1.0); }
TrigPoly TrigPoly::operator-(const TrigPoly& o) const { return combine(*this, o, -1.0); }

// ------------------------------------------------------------------- OneFormUV

OneFormUV build_oneforms(const KobayashiData& data) {
  OneFormUV f;
  f.n = data.n();
  f.angular = data.angular;
  const int m = 2 * f.n;
  const auto& q = data.omega_den.coeffs();
  const cplx I{0, 1};
  for (int k = 0; k < 3; ++k) {
    const auto& p = data.phi_num[k].coeffs();
    const int P = static_cast<int>(p.size()), Q = static_cast<int>(q.size());
    const int lo = -Q, hi = P;
    // z p qbar = sum_j r^j W_j(theta), W_j = sum_{a+b+1=j} p_a conj(q_b) e^{i(a+1-b) theta}
    std::vector<TrigPoly> N(P + Q + 1), Yr(P + Q + 1);
    for (auto& t : N) t = {lo, std::vector<cplx>(hi - lo + 1)};
    for (auto& t : Yr) t = {lo, std::vector<cplx>(hi - lo + 1)};
    for (int a = 0; a < P; ++a)
      for (int b = 0; b < Q; ++b) {
        cplx w = p[a] * std::conj(q[b]);
        int j = a + b + 1, nu = a + 1 - b;
        N[j].c[nu - lo] += 2.0 * w;   // 2 Re W_j
        Yr[j].c[nu - lo] += 2.0 * I * w;  // i (W_j - conj W_j) = -2 Im W_j
      }
    f.X[k] = reciprocal_reduce_coeffs<TrigPoly>(N, m, ReciprocalParity::Anti);
    f.Y[k] = reciprocal_reduce_coeffs<TrigPoly>(Yr, m, ReciprocalParity::Self);
  }
  return f;
}

OneFormUV::Values OneFormUV::numerators(double u, double theta) const {
  int lo = 0, hi = 0;
  size_t deg = 0;
  for (int k = 0; k < 3; ++k) {
    for (auto* v : {&X[k], &Y[k]}) {
      deg = std::max(deg, v->size());
      for (auto& t : *v)
        if (!t.c.empty()) {
          lo = std::min(lo, t.lo);
          hi = std::max(hi, t.hi());
        }
    }
  }
  std::vector<cplx> pw(hi - lo + 1);
  const cplx e = std::polar(1.0, theta);
  const cplx einv = std::conj(e);
  pw[-lo] = 1.0;
  for (int v = 1; v <= hi; ++v) pw[v - lo] = pw[v - 1 - lo] * e;
  for (int v = -1; v >= lo; --v) pw[v - lo] = pw[v + 1 - lo] * einv;
  std::vector<double> T(deg + 1), U(deg + 1);
  T[0] = 1;
  U[0] = 1;
  if (deg >= 1) {
    T[1] = u;
    U[1] = 2 * u;
  }
  for (size_t s = 2; s <= deg; ++s) {
    T[s] = 2 * u * T[s - 1] - T[s - 2];
    U[s] = 2 * u * U[s - 1] - U[s - 2];
  }
  Values out;
  for (int k = 0; k < 3; ++k) {
    for (size_t s = 0; s < X[k].size(); ++s)
      if (!X[k][s].c.empty()) out.x[k] += X[k][s].eval(pw, lo) * U[s];
    for (size_t s = 0; s < Y[k].size(); ++s)
      if (!Y[k][s].c.empty()) out.y[k] += Y[k][s].eval(pw, lo) * T[s];
  }
  return out;
}

double OneFormUV::denominator(const ExtendedPoint& p) const {
  auto d = clearances(angular, p);
  double prod = 2 * std::ldexp(1.0, 2 * n);
  for (size_t j = 0; j < d.size(); ++j) prod *= std::pow(d[j], angular.multiplicities()[j]);
  return prod;
}

std::array<Vec3, 2> OneFormUV::partials(const ExtendedPoint& p) const {
  if (p.is_infinity()) throw Error(ErrorKind::OutsideDomain, "(u, theta) partials are singular at p_inf");
  auto v = numerators(p.u(), p.theta());
  double den = denominator(p);
  std::array<Vec3, 2> out;
  for (int k = 0; k < 3; ++k) {
    out[0][k] = v.x[k] / den;
    out[1][k] = v.y[k] / den;
  }
  return out;
}

// ----------------------------------------------------------------- closed forms

namespace {

std::vector<double> checked_clearances(const AngularData& a, const ExtendedPoint& p) {
  auto d = clearances(a, p);
  for (double x : d)
    if (!(x >= kMinClearance))
      throw Error(ErrorKind::OutsideDomain, "point outside the extension domain or within 1e-12 of its boundary");
  return d;
}

// log(u - cos(theta - alpha_j)), dropping the common log u for large u
std::vector<double> log_terms(const AngularData& a, const ExtendedPoint& p) {
  auto d = checked_clearances(a, p);
  std::vector<double> L(d.size());
  if (p.u() > 2) {
    for (size_t j = 0; j < d.size(); ++j) L[j] = std::log1p(-std::cos(p.theta() - a.betas()[j]) / p.u());
  } else {
    for (size_t j = 0; j < d.size(); ++j) L[j] = std::log(d[j]);
  }
  return L;
}

}  // namespace

SurfacePoint eval_principal(const PrincipalCoeffs& c, const ExtendedPoint& p) {
  if (p.is_infinity()) return {};
  auto L = log_terms(c.angular, p);
  SurfacePoint f;
  for (size_t j = 0; j < L.size(); ++j) {
    cplx e = std::pow(c.angular.alpha_units()[j], c.n - 1);
    f.t -= c.A[j] * L[j];
    f.x += c.A[j] * e.real() * L[j];
    f.y += c.A[j] * e.imag() * L[j];
  }
  return f;
}

SurfacePoint eval_general_distinct(const GeneralCoeffs& c, const ExtendedPoint& p) {
  if (p.is_infinity()) return {};
  auto L = log_terms(c.angular, p);
  SurfacePoint f;
  for (int k = 0; k < 3; ++k)
    for (size_t j = 0; j < L.size(); ++j) f[k] += 0.5 * c.B[k][j] * L[j];
  return f;
}

std::optional<DegenerateParams> degenerate_pattern(const AngularData& a) {
  if (a.n() != 2) return std::nullopt;
  const auto& m = a.multiplicities();
  const auto& b = a.betas();
  if (m.size() == 3 && m[0] == 2) return DegenerateParams{DegeneratePattern::DoubleSimpleSimple, b[1], b[2]};
  if (m.size() == 2 && m[0] == 2 && m[1] == 2) return DegenerateParams{DegeneratePattern::DoubleDouble, b[1], b[1]};
  if (m.size() == 2 && m[0] == 3) return DegenerateParams{DegeneratePattern::TripleSimple, b[1], 0};
  if (m.size() == 1) return DegenerateParams{DegeneratePattern::Quadruple, 0, 0};
  return std::nullopt;
}

SurfacePoint eval_degenerate_n2(const AngularData& a, const ExtendedPoint& p) {
  auto pat = degenerate_pattern(a);
  if (!pat) throw Error(ErrorKind::PatternMismatch, "angles are not of the form (0,0,a,b), (0,0,a,a), (0,0,0,a) or (0,0,0,0)");
  if (p.is_infinity()) return {};
  auto d = checked_clearances(a, p);
  const double th = p.theta(), al = pat->alpha, be = pat->beta;
  const double d0 = d[0];
  const double X0 = std::sin(th) / d0;
  SurfacePoint f;
  switch (pat->pattern) {
    case DegeneratePattern::DoubleSimpleSimple: {
      const double sa = std::sin(al / 2), sb = std::sin(be / 2);
      const double Bp = 1 / (2 * sa * sb);
      const double A1 = 1 / (4 * sa * sa * std::sin((al - be) / 2));
      const double A2 = 1 / (4 * sb * sb * std::sin((be - al) / 2));
      const double X1 = std::log(d[1] / d0), X2 = std::log(d[2] / d0);
      f.t = 0.5 * (-Bp * X0 + A1 * X1 + A2 * X2);
      f.x = 0.5 * (Bp * X0 - A1 * std::cos(al) * X1 - A2 * std::cos(be) * X2);
      f.y = 0.5 * (-A1 * std::sin(al) * X1 - A2 * std::sin(be) * X2);
      break;
    }
    case DegeneratePattern::DoubleDouble: {
      const double sa = std::sin(al / 2);
      const double A = 1 / (4 * sa * sa), B = std::cos(al / 2) / sa;
      const double X1 = std::sin(th - al) / d[1], X2 = std::log(d[1] / d0);
      f.t = -A * X0 - A * X1 - A * B * X2;
      f.x = A * X0 + A * std::cos(al) * X1 + A * B * X2;
      f.y = 0.5 * B * X1 + A * X2;
      break;
    }
    case DegeneratePattern::TripleSimple: {
      const double s = std::sin(al / 2), k = std::cos(al / 2);
      const double X2 = std::log(d[1] / d0);
      const double sn = std::sin(th);
      const double plus = X2 / (4 * s);
      const double minus = sn * sn / (2 * s * d0 * d0) + std::sin(th - al / 2) / (2 * s * s * d0) + k * k * X2 / (4 * s * s * s);
      f.t = 0.5 * (plus + minus);
      f.x = 0.5 * (plus - minus);
      f.y = -std::sin(al) / (8 * s * s * s) * X2 - X0 / (2 * s);
      break;
    }
    case DegeneratePattern::Quadruple: {
      // numerators rewritten with u = cos theta + d0 to keep precision near the boundary
      const double c = std::cos(th), sn = std::sin(th), D = d0;
      const double n0 = 4 * sn * sn - 6 * D * c;
      const double n1 = -2 * sn * sn + 3 * c * D + 3 * D * D;
      const double n2 = -sn * sn + c * D;
      f.t = -sn * n0 / (12 * D * D * D);
      f.x = -sn * n1 / (6 * D * D * D);
      f.y = -n2 / (2 * D * D);
      break;
    }
  }
  return f;
}

// ------------------------------------------------------------------ quadrature

namespace {

constexpr double kQuadAbs = 1e-13, kQuadRel = 1e-13;

Vec3 quad(const std::function<Vec3(double)>& f, double a, double b) {
  auto r = integrate_gk15(f, a, b, kQuadAbs, kQuadRel, 20000);
  if (!r.converged && r.error > 1e-9) throw Error(ErrorKind::NumericFailure, "quadrature did not reach tolerance");
  return r.value;
}

Vec3 add(const Vec3& a, const Vec3& b, double s = 1.0) { return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]}; }

// integral of du-part at fixed theta between clearances c0 < c1 above the active angle
Vec3 vertical_leg(const OneFormUV& forms, const ExtensionDomain& dom, double theta, double c0, double c1) {
  int act = dom.active_interval(theta).index;
  auto g = [&](double w) {
    double c = std::exp(w);
    auto p = dom.from_anchor(theta, act, c);
    auto v = forms.numerators(p.u(), p.theta());
    double den = forms.denominator(p);
    return Vec3{v.x[0] * c / den, v.x[1] * c / den, v.x[2] * c / den};
  };
  return quad(g, std::log(c0), std::log(c1));
}

// integral of the du-part from u_split to infinity, in s = 1/u
Vec3 tail_leg(const OneFormUV& forms, double theta, double u_split) {
  auto g = [&](double s) {
    double u = 1 / s;
    auto p = ExtendedPoint::finite(u, theta);
    auto v = forms.numerators(u, theta);
    double den = forms.denominator(p) * s * s;
    return Vec3{v.x[0] / den, v.x[1] / den, v.x[2] / den};
  };
  return quad(g, 0.0, 1.0 / u_split);
}

Vec3 horizontal_leg(const OneFormUV& forms, double u, double th0, double th1) {
  auto g = [&](double th) {
    auto p = ExtendedPoint::finite(u, th);
    auto v = forms.numerators(u, th);
    double den = forms.denominator(p);
    return Vec3{v.y[0] / den, v.y[1] / den, v.y[2] / den};
  };
  return quad(g, th0, th1);
}

// f(p) - f(p_inf)
Vec3 from_infinity(const OneFormUV& forms, const ExtensionDomain& dom, const ExtendedPoint& p) {
  if (p.is_infinity()) return {};
  auto act = dom.active_interval(p.theta());
  double c0 = dom.boundary_distance(p);
  double u_split = std::max(2.0, act.cosine + 1.0);
  Vec3 up = vertical_leg(forms, dom, p.theta(), c0, u_split - act.cosine);
  Vec3 tail = tail_leg(forms, p.theta(), u_split);
  return {-(up[0] + tail[0]), -(up[1] + tail[1]), -(up[2] + tail[2])};
}

}  // namespace

SurfacePoint integrate_oneform(const OneFormUV& forms, const ExtendedPoint& from, const ExtendedPoint& to,
                               const SurfacePoint& base_value) {
  ExtensionDomain dom(forms.angular);
  for (const auto* p : {&from, &to})
    if (!dom.contains(*p)) throw Error(ErrorKind::OutsideDomain, "path endpoint outside the extension domain");
  if (from.is_infinity() && to.is_infinity()) return base_value;
  if (!from.is_infinity() && !to.is_infinity() && from.u() == to.u() && from.theta() == to.theta()) return base_value;
  Vec3 base = base_value.vec();
  if (from.is_infinity()) return SurfacePoint::from(add(base, from_infinity(forms, dom, to)));
  if (to.is_infinity()) return SurfacePoint::from(add(base, from_infinity(forms, dom, from), -1.0));
  // raise u, move in theta, lower u
  double u_high = std::max({2.0, from.u(), to.u()});
  auto a0 = dom.active_interval(from.theta()), a1 = dom.active_interval(to.theta());
  Vec3 s = base;
  s = add(s, vertical_leg(forms, dom, from.theta(), dom.boundary_distance(from), u_high - a0.cosine));
  double dth = std::remainder(to.theta() - from.theta(), 2 * pi);
  s = add(s, horizontal_leg(forms, u_high, from.theta(), from.theta() + dth));
  s = add(s, vertical_leg(forms, dom, to.theta(), dom.boundary_distance(to), u_high - a1.cosine), -1.0);
  return SurfacePoint::from(s);
}

// --------------------------------------------------------------- disk oracle

namespace {

double segment_distance(cplx a, cplx b, cplx e, double& t) {
  cplx d = b - a;
  double len2 = std::norm(d);
  t = len2 == 0 ? 0 : std::clamp(((e - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(a + t * d - e);
}

Vec3 disk_segment(const KobayashiData& data, cplx a, cplx b, double clearance, int depth) {
  for (const auto& end : data.ends) {
    double t;
    double dist = segment_distance(a, b, end.location, t);
    if (dist < clearance && t > 0 && t < 1 && depth < 12) {
      cplx d = b - a;
      cplx nrm = cplx(-d.imag(), d.real()) / std::abs(d);
      cplx c = a + t * d;
      if (((c - end.location) * std::conj(nrm)).real() < 0) nrm = -nrm;
      cplx w = end.location + 2 * clearance * nrm;
      return add(disk_segment(data, a, w, clearance, depth + 1), disk_segment(data, w, b, clearance, depth + 1));
    }
  }
  const cplx d = b - a;
  auto g = [&](double t) {
    cplx z = a + t * d;
    cplx q = data.omega_den(z);
    Vec3 v;
    for (int k = 0; k < 3; ++k) v[k] = (data.phi_num[k](z) / q * d).real();
    return v;
  };
  return quad(g, 0.0, 1.0);
}

}  // namespace

SurfacePoint eval_on_disk(const KobayashiData& data, cplx z, cplx z0, const SurfacePoint& f0) {
  double gap = 2.0;
  const auto& e = data.ends;
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = i + 1; j < e.size(); ++j) gap = std::min(gap, std::abs(e[i].location - e[j].location));
  for (const auto& end : e)
    for (cplx w : {z, z0})
      if (std::abs(w - end.location) < 1e-12) throw Error(ErrorKind::PathBlocked, "path endpoint at an end");
  return SurfacePoint::from(add(f0.vec(), disk_segment(data, z0, z, 0.2 * gap, 0)));
}

SurfacePoint loop_displacement(const KobayashiData& data, cplx center, double radius) {
  auto g = [&](double t) {
    cplx e = std::polar(1.0, t);
    cplx z = center + radius * e;
    cplx dz = cplx(0, radius) * e;
    cplx q = data.omega_den(z);
    Vec3 v;
    for (int k = 0; k < 3; ++k) v[k] = (data.phi_num[k](z) / q * dz).real();
    return v;
  };
  return SurfacePoint::from(quad(g, 0.0, 2 * pi));
}

// --------------------------------------------------------------------- causal

const char* to_string(Causal c) {
  switch (c) {
    case Causal::Spacelike: return "spacelike";
    case Causal::Lightlike: return "lightlike";
    case Causal::Timelike: return "timelike";
  }
  return "?";
}

Causal causal_character(double lx, double ly, double band) {
  double s = 1 - lx * lx - ly * ly;
  if (std::abs(s) < band) return Causal::Lightlike;
  return s > 0 ? Causal::Spacelike : Causal::Timelike;
}

const char* to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::Principal: return "principal-closed-form";
    case EvalMethod::GeneralDistinct: return "general-closed-form";
    case EvalMethod::DegenerateN2: return "degenerate-n2-closed-form";
    case EvalMethod::Quadrature: return "quadrature";
  }
  return "?";
}

// -------------------------------------------------------------------- Surface

Surface::Surface(KobayashiData data) : data_(std::move(data)), domain_(data_.angular), forms_(build_oneforms(data_)) {
  if (data_.angular.distinct()) {
    if (data_.principal) {
      principal_ = principal_coefficients(data_.angular);
      method_ = EvalMethod::Principal;
    } else {
      general_ = general_coefficients(data_);
      method_ = EvalMethod::GeneralDistinct;
    }
  } else if (degenerate_pattern(data_.angular)) {
    method_ = EvalMethod::DegenerateN2;
  } else {
    method_ = EvalMethod::Quadrature;
  }
}

SurfacePoint Surface::eval(const ExtendedPoint& p) const {
  switch (method_) {
    case EvalMethod::Principal: return eval_principal(*principal_, p);
    case EvalMethod::GeneralDistinct: return eval_general_distinct(*general_, p);
    case EvalMethod::DegenerateN2: return eval_degenerate_n2(data_.angular, p);
    case EvalMethod::Quadrature: return eval_by_quadrature(p);
  }
  return {};
}

SurfacePoint Surface::eval_by_quadrature(const ExtendedPoint& p) const {
  return integrate_oneform(forms_, ExtendedPoint::infinity(), p, {});
}

std::array<Vec3, 2> Surface::partials(const ExtendedPoint& p) const { return forms_.partials(p); }

std::array<Vec3, 2> Surface::chart_partials(const ExtendedPoint& p) const {
  std::array<Vec3, 2> out{};
  if (p.is_infinity() || p.u() > 1.5) {
    // f = Re F(z) with z = (a + ib) h(rho^2), h = 1 / (1 + sqrt(1 - rho^2))
    double u = p.is_infinity() ? HUGE_VAL : p.u();
    double th = p.is_infinity() ? 0.0 : p.theta();
    double rho = p.is_infinity() ? 0.0 : 1 / u;
    cplx ab = std::polar(rho, th);
    double sq = std::sqrt(1 - rho * rho);
    double h = 1 / (1 + sq), hp = 1 / (2 * sq * (1 + sq) * (1 + sq));
    cplx z = ab * h;
    cplx dza = h + ab * (2 * ab.real() * hp);
    cplx dzb = cplx(0, h) + ab * (2 * ab.imag() * hp);
    cplx q = data_.omega_den(z);
    for (int k = 0; k < 3; ++k) {
      cplx phi = data_.phi_num[k](z) / q;
      out[0][k] = (phi * dza).real();
      out[1][k] = (phi * dzb).real();
    }
    return out;
  }
  auto d = partials(p);
  const double u = p.u(), c = std::cos(p.theta()), s = std::sin(p.theta());
  for (int k = 0; k < 3; ++k) {
    out[0][k] = -u * u * c * d[0][k] - u * s * d[1][k];
    out[1][k] = -u * u * s * d[0][k] + u * c * d[1][k];
  }
  return out;
}

Causal Surface::causal_at(const ExtendedPoint& p) const {
  auto d = (p.is_infinity() || p.u() > 1.5) ? chart_partials(p) : partials(p);
  const Vec3& a = d[0];
  const Vec3& b = d[1];
  double det = a[1] * b[2] - a[2] * b[1];
  double scale = std::hypot(a[1], a[2]) * std::hypot(b[1], b[2]);
  if (std::abs(det) > 1e-10 * scale && scale > 0) {
    double lx = (a[0] * b[2] - a[2] * b[0]) / det;
    double ly = (a[1] * b[0] - a[0] * b[1]) / det;
    return causal_character(lx, ly);
  }
  // first fundamental form of signature (-++)
  auto dot = [](const Vec3& x, const Vec3& y) { return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; };
  auto edot = [](const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; };
  double E = dot(a, a), F = dot(a, b), G = dot(b, b);
  double norm = edot(a, a) * edot(b, b);
  if (norm == 0) return Causal::Lightlike;
  double disc = (E * G - F * F) / norm;
  if (std::abs(disc) < 1e-6) return Causal::Lightlike;
  return disc > 0 ? Causal::Spacelike : Causal::Timelike;
}

}  // namespace zmc
