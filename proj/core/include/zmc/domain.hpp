#pragma once

// The extension domain u > max_j cos(theta - beta_j) with its point at infinity.

#include <optional>
#include <vector>

#include "zmc/weierstrass.hpp"

namespace zmc {

class ExtendedPoint {
 public:
  static ExtendedPoint finite(double u, double theta);
  static ExtendedPoint infinity();

  bool is_infinity() const { return inf_; }
  double u() const { return u_; }
  double theta() const { return theta_; }
  // Set for points built from a clearance: u = cos(theta - beta_anchor) + clearance,
  // with the clearance known to full relative precision.
  bool anchored() const { return anchor_ >= 0; }
  int anchor() const { return anchor_; }
  double anchor_clearance() const { return clearance_; }

 private:
  friend class ExtensionDomain;
  bool inf_ = false;
  double u_ = 0, theta_ = 0;
  int anchor_ = -1;
  double clearance_ = 0;
};

double wrap_angle(double theta);  // into [0, 2 pi)

// u - cos(theta - beta_j) for every distinct angle, accurate near the boundary
std::vector<double> clearances(const AngularData& angular, const ExtendedPoint& p);

ExtendedPoint iota(cplx z);
cplx iota_inverse(const ExtendedPoint& p);

struct ActiveInterval {
  int index;
  double cosine;
};

class ExtensionDomain {
 public:
  ExtensionDomain() = default;
  explicit ExtensionDomain(AngularData angular) : a_(std::move(angular)) {}

  const AngularData& angular() const { return a_; }

  bool contains(const ExtendedPoint& p) const;
  ActiveInterval active_interval(double theta) const;
  double lower_bound() const;
  double boundary_distance(const ExtendedPoint& p) const;

  std::vector<double> clearances(const ExtendedPoint& p) const { return zmc::clearances(a_, p); }

  // point at the given clearance above the dominating cosine
  ExtendedPoint at_clearance(double theta, double clearance) const;
  // point with u = cos(theta - beta_anchor) + clearance, re-anchored to the
  // active interval of theta (the stored clearance may come out negative)
  ExtendedPoint from_anchor(double theta, int anchor, double clearance) const;

 private:
  AngularData a_;
};

}  // namespace zmc
