#include "zmc/domain.hpp"

#include <cmath>
#include <numbers>

namespace zmc {

using std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, 2 * pi);
  if (t < 0) t += 2 * pi;
  if (t >= 2 * pi) t = 0;
  return t;
}

ExtendedPoint ExtendedPoint::finite(double u, double theta) {
  ExtendedPoint p;
  p.u_ = u;
  p.theta_ = wrap_angle(theta);
  return p;
}

ExtendedPoint ExtendedPoint::infinity() {
  ExtendedPoint p;
  p.inf_ = true;
  return p;
}

ExtendedPoint iota(cplx z) {
  double r = std::abs(z);
  if (r > 1.0) throw Error(ErrorKind::OutOfDisk, "|z| > 1");
  if (r == 0.0) return ExtendedPoint::infinity();
  return ExtendedPoint::finite(0.5 * (r + 1.0 / r), std::arg(z));
}

cplx iota_inverse(const ExtendedPoint& p) {
  if (p.is_infinity()) return 0.0;
  double u = p.u();
  if (u < 1.0) throw Error(ErrorKind::BelowOne, "u < 1 has no preimage in the closed disk");
  double r = 1.0 / (u + std::sqrt((u - 1.0) * (u + 1.0)));
  return std::polar(r, p.theta());
}

ActiveInterval ExtensionDomain::active_interval(double theta) const {
  const auto& b = a_.betas();
  int best = 0;
  double bestd = 10;
  for (size_t j = 0; j < b.size(); ++j) {
    double d = std::abs(std::remainder(theta - b[j], 2 * pi));
    if (d < bestd - 1e-15) {
      bestd = d;
      best = static_cast<int>(j);
    }
  }
  return {best, std::cos(theta - b[best])};
}

double ExtensionDomain::lower_bound() const {
  double m = 1;
  for (double g : a_.gaps()) m = std::min(m, std::cos(0.5 * g));
  return m;
}

namespace {

// clearance above beta_to, given the clearance above beta_from at the same point
double gap_between(const AngularData& a, double theta, int from, int to, double clearance) {
  if (from == to) return clearance;
  const auto& b = a.betas();
  return clearance - 2 * std::sin(theta - 0.5 * (b[from] + b[to])) * std::sin(0.5 * (b[to] - b[from]));
}

}  // namespace

std::vector<double> clearances(const AngularData& a, const ExtendedPoint& p) {
  if (p.is_infinity()) throw Error(ErrorKind::OutsideDomain, "clearances are undefined at the point at infinity");
  const auto& b = a.betas();
  std::vector<double> d(b.size());
  for (size_t j = 0; j < b.size(); ++j) {
    if (p.anchored()) {
      d[j] = gap_between(a, p.theta(), p.anchor(), static_cast<int>(j), p.anchor_clearance());
    } else {
      double s = std::sin(0.5 * (p.theta() - b[j]));
      d[j] = (p.u() - 1.0) + 2 * s * s;
    }
  }
  return d;
}

bool ExtensionDomain::contains(const ExtendedPoint& p) const {
  if (p.is_infinity()) return true;
  if (!std::isfinite(p.u())) return false;
  for (double d : clearances(p))
    if (!(d > 0)) return false;
  return true;
}

double ExtensionDomain::boundary_distance(const ExtendedPoint& p) const {
  if (p.is_infinity()) throw Error(ErrorKind::OutsideDomain, "boundary distance of the point at infinity");
  auto d = clearances(p);
  double m = d[0];
  for (double x : d) m = std::min(m, x);
  return m;
}

ExtendedPoint ExtensionDomain::at_clearance(double theta, double clearance) const {
  auto act = active_interval(wrap_angle(theta));
  return from_anchor(theta, act.index, clearance);
}

ExtendedPoint ExtensionDomain::from_anchor(double theta, int anchor, double clearance) const {
  double t = wrap_angle(theta);
  int act = active_interval(t).index;
  double c = gap_between(a_, t, anchor, act, clearance);
  ExtendedPoint p;
  p.theta_ = t;
  p.anchor_ = act;
  p.clearance_ = c;
  p.u_ = std::cos(t - a_.betas()[act]) + c;
  return p;
}

}  // namespace zmc
