#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "zmc/domain.hpp"

using namespace zmc;
using std::numbers::pi;

namespace {

ExtensionDomain scherk2() {
  return ExtensionDomain(AngularData::make(2, {Angle::pi(0, 1), Angle::pi(1, 2), Angle::pi(1, 1), Angle::pi(3, 2)}));
}

}  // namespace

TEST(Iota, Examples) {
  auto p = iota(1.0);
  EXPECT_EQ(p.u(), 1.0);
  EXPECT_EQ(p.theta(), 0.0);
  EXPECT_DOUBLE_EQ(iota(0.5).u(), 1.25);
  EXPECT_TRUE(iota(0.0).is_infinity());
  EXPECT_THROW(iota(1.5), Error);
  EXPECT_LT(std::abs(iota_inverse(ExtendedPoint::finite(1.25, 0)) - 0.5), 1e-15);
  EXPECT_LT(std::abs(iota_inverse(ExtendedPoint::finite(1, pi)) + 1.0), 1e-15);
  EXPECT_EQ(iota_inverse(ExtendedPoint::infinity()), cplx(0.0));
  EXPECT_THROW(iota_inverse(ExtendedPoint::finite(0.5, 0)), Error);
}

TEST(Iota, RoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ur(0, 1);
  for (int s = 0; s < 1000; ++s) {
    cplx z = std::polar(ur(rng), 2 * pi * ur(rng));
    EXPECT_LT(std::abs(iota_inverse(iota(z)) - z), 1e-12);
  }
}

TEST(Domain, Contains) {
  auto d = scherk2();
  EXPECT_TRUE(d.contains(ExtendedPoint::finite(0.8, pi / 4)));
  EXPECT_FALSE(d.contains(ExtendedPoint::finite(1.0, 0)));
  EXPECT_TRUE(d.contains(ExtendedPoint::infinity()));
  EXPECT_NEAR(d.boundary_distance(ExtendedPoint::finite(0.8, pi / 4)), 0.8 - std::sqrt(0.5), 1e-15);
  EXPECT_GE(d.boundary_distance(ExtendedPoint::finite(2, 1.234)), 1.0);
}

TEST(Domain, ActiveInterval) {
  auto d = scherk2();
  EXPECT_EQ(d.active_interval(0.1).index, 0);
  EXPECT_EQ(d.active_interval(pi / 4).index, 0);
  EXPECT_EQ(d.active_interval(pi).index, 2);
  EXPECT_NEAR(d.active_interval(pi).cosine, 1.0, 0);
}

TEST(Domain, LowerBound) {
  EXPECT_NEAR(scherk2().lower_bound(), std::cos(pi / 4), 1e-15);
  ExtensionDomain jm(AngularData::make(2, {Angle::pi(0, 1), Angle::pi(0, 1), Angle::pi(1, 1), Angle::pi(1, 1)}));
  EXPECT_NEAR(jm.lower_bound(), 0.0, 1e-15);
  ExtensionDomain z(AngularData::make(2, {Angle::pi(0, 1), Angle::pi(0, 1), Angle::pi(0, 1), Angle::pi(0, 1)}));
  EXPECT_NEAR(z.lower_bound(), -1.0, 1e-15);
}

TEST(Domain, IntervalProperty) {
  ExtensionDomain d(AngularData::from_radians(3, {0, 0.4, 1.9, 2.5, 4.0, 5.1}));
  const auto& b = d.angular().betas();
  for (size_t i = 0; i < b.size(); ++i) {
    auto [lo, hi] = d.angular().interval(static_cast<int>(i));
    for (int s = 0; s <= 255; ++s) {
      double th = lo + (hi - lo) * (s + 0.5) / 256;
      for (size_t j = 0; j < b.size(); ++j)
        if (j != i) EXPECT_GT(std::cos(th - b[i]), std::cos(th - b[j]));
    }
    // equality at the right endpoint, with the neighbour
    size_t nb = (i + 1) % b.size();
    EXPECT_NEAR(std::cos(hi - b[i]), std::cos(hi - b[nb]), 1e-14);
  }
}

TEST(Domain, MonotoneAndDiskInclusion) {
  ExtensionDomain d(AngularData::from_radians(3, {0, 0.4, 1.9, 2.5, 4.0, 5.1}));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ur(0, 1);
  for (int s = 0; s < 500; ++s) {
    double th = 2 * pi * ur(rng);
    double u = -1 + 3 * ur(rng);
    if (d.contains(ExtendedPoint::finite(u, th))) EXPECT_TRUE(d.contains(ExtendedPoint::finite(u + ur(rng), th)));
    EXPECT_TRUE(d.contains(ExtendedPoint::finite(1 + 1e-9 + ur(rng), th)));
  }
}

TEST(Domain, AnchoredClearancesArePrecise) {
  ExtensionDomain d(AngularData::from_radians(3, {0, 0.4, 1.9, 2.5, 4.0, 5.1}));
  for (double c : {1e-3, 1e-8, 1e-13}) {
    for (double th : {0.05, 0.3, 1.2, 3.3, 6.0}) {
      auto p = d.at_clearance(th, c);
      EXPECT_EQ(d.boundary_distance(p), c);
      EXPECT_TRUE(d.contains(p));
      auto plain = d.clearances(ExtendedPoint::finite(p.u(), p.theta()));
      auto prec = d.clearances(p);
      for (size_t j = 0; j < plain.size(); ++j) EXPECT_NEAR(plain[j], prec[j], 1e-15);
    }
  }
  // re-anchoring across an interval endpoint
  auto q = d.from_anchor(0.3, 0, 1e-4);  // theta beyond gamma_0 = 0.2
  EXPECT_EQ(q.anchor(), 1);
  EXPECT_NEAR(q.anchor_clearance(), 1e-4 + std::cos(0.3) - std::cos(0.3 - 0.4), 1e-15);
}
