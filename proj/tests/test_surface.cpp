#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "zmc/surface.hpp"

using namespace zmc;
using std::numbers::pi;

namespace {

AngularData pi_angles(int n, std::vector<std::pair<long long, long long>> f) {
  std::vector<Angle> a;
  for (auto [p, q] : f) a.push_back(Angle::pi(p, q));
  return AngularData::make(n, a);
}

AngularData scherk_angles(int n) {
  std::vector<Angle> a;
  for (int j = 0; j < 2 * n; ++j) a.push_back(Angle::pi(j, n));
  return AngularData::make(n, a);
}

double max_diff(const SurfacePoint& a, const SurfacePoint& b) {
  return std::max({std::abs(a.t - b.t), std::abs(a.x - b.x), std::abs(a.y - b.y)});
}

double max_abs(const SurfacePoint& a) { return std::max({std::abs(a.t), std::abs(a.x), std::abs(a.y)}); }

// sample points of the domain, including some with u < 1
std::vector<ExtendedPoint> sample_points(const ExtensionDomain& dom, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> th(0, 2 * pi), lc(std::log(1e-3), std::log(3.0));
  std::vector<ExtendedPoint> out;
  while (static_cast<int>(out.size()) < count) out.push_back(dom.at_clearance(th(rng), std::exp(lc(rng))));
  return out;
}

}  // namespace

TEST(OneForm, MatchesHolomorphicFormAboveOne) {
  auto d = build(AngularData::from_radians(3, {0, 0.7, 1.9, 3.0, 4.1, 5.5}), {{cplx(0.2, -0.3), cplx(-0.5, 0.1)}});
  auto f = build_oneforms(d);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(1.05, 6.0), T(0, 2 * pi);
  for (int s = 0; s < 40; ++s) {
    double u = U(rng), th = T(rng);
    auto p = ExtendedPoint::finite(u, th);
    double r = 1 / (u + std::sqrt(u * u - 1));
    cplx z = std::polar(r, th);
    cplx dzdu = -z / std::sqrt(u * u - 1);
    cplx dzdt = cplx(0, 1) * z;
    auto part = f.partials(p);
    for (int k = 0; k < 3; ++k) {
      cplx phi = d.phi.phi[k](z);
      double eu = (phi * dzdu).real(), et = (phi * dzdt).real();
      double sc = std::abs(phi) * std::abs(z) * (1 + 1 / std::sqrt(u * u - 1));
      EXPECT_NEAR(part[0][k], eu, 1e-11 * sc);
      EXPECT_NEAR(part[1][k], et, 1e-11 * sc);
    }
  }
}

TEST(OneForm, DenominatorIsSquaredModulus) {
  // |q(z)|^2 = 4^n r^{2n} prod_j (u - cos(theta - alpha_j)) for |z| = r
  auto d = build(AngularData::from_radians(3, {0, 0.7, 1.9, 3.0, 4.1, 5.5}), {});
  auto f = build_oneforms(d);
  for (double r : {0.2, 0.5, 0.9}) {
    double th = 1.1;
    double u = (r + 1 / r) / 2;
    cplx q = d.omega_den(std::polar(r, th));
    double den = f.denominator(ExtendedPoint::finite(u, th)) / 2;
    EXPECT_NEAR(std::norm(q), den * std::pow(r, 6), 1e-12 * std::norm(q));
  }
}

TEST(ClosedForm, ScherkImplicitEquation) {
  Surface s(build(scherk_angles(2), {}));
  EXPECT_EQ(s.method(), EvalMethod::Principal);
  for (auto& p : sample_points(s.domain(), 60, 1)) {
    auto f = s.eval(p);
    double t = 2 * f.t, x = 2 * f.x, y = 2 * f.y;
    double phi = std::cosh(x) - std::exp(t) * std::cosh(y);
    EXPECT_NEAR(phi, 0.0, 1e-9 * (std::cosh(x) + std::exp(t) * std::cosh(y)));
  }
  EXPECT_EQ(max_abs(s.eval(ExtendedPoint::infinity())), 0.0);
}

TEST(ClosedForm, DerivativesMatchOneForms) {
  std::vector<KobayashiData> cases{
      build(AngularData::from_radians(3, {0, 0.7, 1.9, 3.0, 4.1, 5.5}), {}),
      build(AngularData::from_radians(3, {0, 0.7, 1.9, 3.0, 4.1, 5.5}), {{cplx(0.2, -0.3), cplx(-0.5, 0.1)}}),
      build(pi_angles(2, {{0, 1}, {0, 1}, {2, 3}, {3, 2}}), {}),
      build(pi_angles(2, {{0, 1}, {0, 1}, {1, 1}, {1, 1}}), {}),
      build(pi_angles(2, {{0, 1}, {0, 1}, {0, 1}, {2, 3}}), {}),
      build(pi_angles(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}), {}),
  };
  for (auto& d : cases) {
    Surface s(d);
    for (auto& p : sample_points(s.domain(), 20, 7)) {
      double c = s.domain().boundary_distance(p);
      double h = 1e-5 * std::min(1.0, c);
      auto up = s.eval(ExtendedPoint::finite(p.u() + h, p.theta()));
      auto dn = s.eval(ExtendedPoint::finite(p.u() - h, p.theta()));
      auto lt = s.eval(ExtendedPoint::finite(p.u(), p.theta() - h));
      auto rt = s.eval(ExtendedPoint::finite(p.u(), p.theta() + h));
      auto part = s.partials(p);
      for (int k = 0; k < 3; ++k) {
        double fu = (up[k] - dn[k]) / (2 * h), ft = (rt[k] - lt[k]) / (2 * h);
        double sc = 1 + std::abs(part[0][k]) + std::abs(part[1][k]);
        EXPECT_NEAR(fu, part[0][k], 1e-5 * sc) << to_string(s.method()) << " k=" << k;
        EXPECT_NEAR(ft, part[1][k], 1e-5 * sc) << to_string(s.method()) << " k=" << k;
      }
    }
  }
}

TEST(ClosedForm, AgreesWithQuadrature) {
  std::vector<KobayashiData> cases{
      build(scherk_angles(2), {}),
      build(AngularData::from_radians(3, {0, 0.7, 1.9, 3.0, 4.1, 5.5}), {}),
      build(AngularData::from_radians(3, {0, 0.7, 1.9, 3.0, 4.1, 5.5}), {{cplx(0.2, -0.3), cplx(-0.5, 0.1)}}),
      build(pi_angles(2, {{0, 1}, {0, 1}, {2, 3}, {3, 2}}), {}),
      build(pi_angles(2, {{0, 1}, {0, 1}, {1, 1}, {1, 1}}), {}),
      build(pi_angles(2, {{0, 1}, {0, 1}, {0, 1}, {2, 3}}), {}),
      build(pi_angles(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}), {}),
  };
  for (auto& d : cases) {
    Surface s(d);
    ASSERT_NE(s.method(), EvalMethod::Quadrature);
    for (auto& p : sample_points(s.domain(), 12, 11)) {
      auto a = s.eval(p), b = s.eval_by_quadrature(p);
      EXPECT_LT(max_diff(a, b), 1e-9 * (1 + max_abs(a))) << to_string(s.method()) << " u=" << p.u() << " th=" << p.theta();
    }
  }
}

TEST(ClosedForm, AgreesWithDiskIntegral) {
  auto d = build(AngularData::from_radians(3, {0, 0.7, 1.9, 3.0, 4.1, 5.5}), {});
  Surface s(d);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> R(0.05, 0.95), T(0, 2 * pi);
  for (int k = 0; k < 10; ++k) {
    cplx z = std::polar(R(rng), T(rng));
    auto a = s.eval(iota(z));
    auto b = eval_on_disk(d, z);
    EXPECT_LT(max_diff(a, b), 1e-10 * (1 + max_abs(a)));
    // reflection across the unit circle gives the same point
    auto c = eval_on_disk(d, 1.0 / std::conj(z));
    EXPECT_LT(max_diff(a, c), 1e-9 * (1 + max_abs(a)));
  }
}

TEST(Quadrature, PathIndependence) {
  auto d = build(AngularData::from_radians(3, {0, 0.7, 1.9, 3.0, 4.1, 5.5}), {});
  Surface s(d);
  auto pts = sample_points(s.domain(), 6, 5);
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    auto base = s.eval(pts[i]);
    auto v = integrate_oneform(s.oneforms(), pts[i], pts[i + 1], base);
    EXPECT_LT(max_diff(v, s.eval(pts[i + 1])), 1e-9 * (1 + max_abs(v)));
  }
}

TEST(ClosedForm, NearBoundaryPrecision) {
  Surface s(build(scherk_angles(3), {}));
  for (double c : {1e-4, 1e-8, 1e-11}) {
    auto p = s.domain().at_clearance(0.3, c);
    auto f = s.eval(p);
    auto part = s.partials(p);
    // x_0 ~ -A_0 log c near the boundary of interval 0
    EXPECT_TRUE(std::isfinite(f.t) && std::isfinite(part[0][0]));
  }
  EXPECT_THROW(s.eval(s.domain().at_clearance(0.3, 1e-13)), Error);
  EXPECT_THROW(s.eval(ExtendedPoint::finite(0.5, 0.0)), Error);
}

TEST(Degenerate, PatternRecognition) {
  EXPECT_EQ(degenerate_pattern(pi_angles(2, {{0, 1}, {0, 1}, {1, 1}, {1, 1}}))->pattern, DegeneratePattern::DoubleDouble);
  EXPECT_EQ(degenerate_pattern(pi_angles(2, {{0, 1}, {0, 1}, {0, 1}, {1, 1}}))->pattern, DegeneratePattern::TripleSimple);
  EXPECT_FALSE(degenerate_pattern(pi_angles(2, {{0, 1}, {1, 2}, {1, 1}, {1, 1}})));
  EXPECT_THROW(eval_degenerate_n2(scherk_angles(2), ExtendedPoint::finite(2, 0)), Error);
  Surface q(build(pi_angles(2, {{0, 1}, {1, 2}, {1, 1}, {1, 1}}), {}));
  EXPECT_EQ(q.method(), EvalMethod::Quadrature);
}

TEST(Causal, Classification) {
  EXPECT_EQ(causal_character(0.1, 0.2), Causal::Spacelike);
  EXPECT_EQ(causal_character(1.0, 0.0), Causal::Lightlike);
  EXPECT_EQ(causal_character(1.0, 0.5), Causal::Timelike);
  Surface s(build(scherk_angles(2), {}));
  EXPECT_EQ(s.causal_at(ExtendedPoint::finite(2, 0.3)), Causal::Spacelike);
  EXPECT_EQ(s.causal_at(s.domain().at_clearance(pi / 4, 0.05)), Causal::Timelike);
}
