#pragma once

// Named surfaces with their implicit equations and expected classification.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zmc/analysis.hpp"

namespace zmc {

// Diagonal scale applied to (t, x, y) before the implicit equation is evaluated.
struct Normalization {
  std::array<double, 3> scale{1, 1, 1};
  SurfacePoint apply(const SurfacePoint& p) const { return {scale[0] * p.t, scale[1] * p.x, scale[2] * p.y}; }
};

struct GalleryExpectation {
  bool fold_type = true;
  bool ends_on_circle = true;  // condition (i)
  bool fold_condition = true;  // condition (iii)
  std::optional<ConditionStatus> graph_condition;
  bool certified_graph = false;  // entire graph known although angles repeat
  bool self_intersecting = false;
};

// Phi together with the sum of the magnitudes of its terms, the scale of its
// rounding error.
struct ImplicitValue {
  double value = 0;
  double scale = 0;
};

struct GalleryEntry {
  std::string name;
  std::string description;
  std::optional<KobayashiData> data;  // absent for the non-Kobayashi negatives
  RawWeierstrass raw;
  Normalization normalization;
  std::function<ImplicitValue(double, double, double)> implicit_form;  // Phi(t, x, y), may be empty
  GalleryExpectation expected;

  bool is_kobayashi() const { return data.has_value(); }
  bool entire_graph() const;
};

GalleryEntry scherk(int n);
GalleryEntry jorge_meeks(int n);
GalleryEntry ruled_enneper();
GalleryEntry parabolic();
GalleryEntry helicoid_negative();
GalleryEntry elliptic_catenoid_negative();
GalleryEntry self_intersecting_fb();
GalleryEntry self_intersecting_n3();

// Registry names as accepted on the command line.
std::vector<std::string> gallery_names();
// "name" or "name:n"; n only for scherk and jorge-meeks
GalleryEntry gallery_lookup(const std::string& spec);
// default members of every family
std::vector<GalleryEntry> gallery_list();

// |Phi| / max(1, term scale) at the normalized point
double implicit_residual(const GalleryEntry& e, const SurfacePoint& p);

}  // namespace zmc
