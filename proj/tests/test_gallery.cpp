#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "zmc/gallery.hpp"

using namespace zmc;
using std::numbers::pi;

namespace {

std::vector<ExtendedPoint> sample_points(const ExtensionDomain& dom, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> th(0, 2 * pi), lc(std::log(1e-2), std::log(3.0));
  std::vector<ExtendedPoint> out;
  while (static_cast<int>(out.size()) < count) out.push_back(dom.at_clearance(th(rng), std::exp(lc(rng))));
  return out;
}

}  // namespace

TEST(Gallery, ImplicitForms) {
  for (auto name : {"scherk:2", "jorge-meeks:2", "ruled-enneper", "parabolic"}) {
    auto e = gallery_lookup(name);
    Surface s(*e.data);
    double worst = 0;
    for (auto& p : sample_points(s.domain(), 100, 1)) worst = std::max(worst, implicit_residual(e, s.eval(p)));
    EXPECT_LT(worst, 1e-9) << name;
    EXPECT_LT(implicit_residual(e, s.eval(ExtendedPoint::infinity())), 1e-15) << name;
  }
  EXPECT_THROW(implicit_residual(gallery_lookup("scherk:3"), {}), Error);
}

TEST(Gallery, RuledEnneperRulingsAndGradient) {
  auto e = ruled_enneper();
  Surface s(*e.data);
  for (auto& p : sample_points(s.domain(), 40, 2)) {
    auto f = s.eval(p);
    double t = f.t, x = f.x, y = f.y;
    double gt = 4 * t * t + 8 * t * x + 4 * x * x - 2 * y + 1;
    double gx = 4 * t * t + 8 * t * x + 4 * x * x - 2 * y;
    double gy = -2 * t - 2 * x;
    EXPECT_GT(std::abs(gt) + std::abs(gx) + std::abs(gy), 1e-6);
    if (std::abs(t + x) < 1e-3) continue;
    for (double k : {-1.0, 0.5, 2.0}) {
      auto v = e.implicit_form(t - k, x + k, y - k / (2 * (t + x)));
      EXPECT_LT(std::abs(v.value), 1e-9 * std::max(1.0, v.scale));
    }
  }
}

TEST(Gallery, FoldTypeExpectations) {
  for (auto& e : gallery_list()) {
    auto r = verify_fold_type(e.raw, 256);
    EXPECT_EQ(r.passed(), e.expected.fold_type) << e.name;
    EXPECT_EQ(r.ends_on_circle, e.expected.ends_on_circle) << e.name;
    EXPECT_EQ(r.fold_condition_ok, e.expected.fold_condition) << e.name;
    if (e.is_kobayashi()) EXPECT_LT(period_check(*e.data), 1e-10) << e.name;
  }
  for (int n = 2; n <= 5; ++n) {
    EXPECT_TRUE(scherk(n).entire_graph());
    EXPECT_TRUE(verify_fold_type(scherk(n).raw, 128).passed());
  }
  EXPECT_TRUE(jorge_meeks(2).entire_graph());
  for (int n = 3; n <= 5; ++n) EXPECT_EQ(*jorge_meeks(n).expected.graph_condition, ConditionStatus::Violated);
}

TEST(Gallery, LoopDisplacementAroundEnds) {
  for (auto name : {"scherk:2", "scherk:3", "jorge-meeks:3", "parabolic", "self-intersecting-fb"}) {
    auto e = gallery_lookup(name);
    for (const auto& end : e.data->ends) {
      auto d = loop_displacement(*e.data, end.location, 0.05);
      EXPECT_LT(std::max({std::abs(d.t), std::abs(d.x), std::abs(d.y)}), 1e-8) << name;
    }
  }
}

TEST(Gallery, Lookup) {
  EXPECT_EQ(gallery_lookup("scherk:4").data->n(), 4);
  EXPECT_THROW(gallery_lookup("scherk:x"), Error);
  EXPECT_THROW(gallery_lookup("parabolic:3"), Error);
  EXPECT_THROW(gallery_lookup("catenoid"), Error);
  EXPECT_EQ(gallery_names().size(), gallery_list().size());
}

TEST(Gallery, SelfIntersections) {
  for (auto& e : {self_intersecting_fb(), self_intersecting_n3()}) {
    Surface s(*e.data);
    auto c = injectivity_scan(s, {.resolution = 200});
    EXPECT_FALSE(c.empty()) << e.name;
  }
  for (auto& e : {scherk(2), scherk(3), scherk(4), jorge_meeks(2), parabolic()}) {
    Surface s(*e.data);
    auto c = injectivity_scan(s, {.resolution = 200});
    EXPECT_TRUE(c.empty()) << e.name << " " << c.size();
  }
}
