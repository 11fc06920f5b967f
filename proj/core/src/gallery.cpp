#include "zmc/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>

namespace zmc {

namespace {

KobayashiData from_pi_fractions(int n, const std::vector<std::pair<long long, long long>>& f, BlaschkeParams b = {}) {
  std::vector<Angle> a;
  for (auto [p, q] : f) a.push_back(Angle::pi(p, q));
  return build(AngularData::make(n, a), b);
}

GalleryEntry kobayashi_entry(std::string name, std::string description, KobayashiData d) {
  GalleryEntry e;
  e.name = std::move(name);
  e.description = std::move(description);
  e.raw = d.raw();
  e.data = std::move(d);
  e.expected.graph_condition = check_conditions(e.data->angular, e.data->principal).graph_condition;
  return e;
}

}  // namespace

bool GalleryEntry::entire_graph() const {
  if (!data) return false;
  if (expected.certified_graph) return true;
  return data->angular.distinct() && expected.graph_condition && *expected.graph_condition != ConditionStatus::Violated;
}

GalleryEntry scherk(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "scherk needs n >= 2");
  std::vector<std::pair<long long, long long>> f;
  for (int j = 0; j < 2 * n; ++j) f.emplace_back(j, n);
  auto e = kobayashi_entry("scherk:" + std::to_string(n), "Scherk type, omega = dz/(z^{2n} - 1)", from_pi_fractions(n, f));
  if (n == 2) {
    // omega = 2 dz/(z^4 - 1) gives cosh x = e^t cosh y
    e.normalization.scale = {2, 2, 2};
    e.implicit_form = [](double t, double x, double y) {
      double a = std::cosh(x), b = std::exp(t) * std::cosh(y);
      return ImplicitValue{a - b, a + b};
    };
  }
  return e;
}

GalleryEntry jorge_meeks(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "jorge-meeks needs n >= 2");
  std::vector<std::pair<long long, long long>> f;
  for (int j = 0; j < n; ++j) {
    f.emplace_back(2 * j, n);
    f.emplace_back(2 * j, n);
  }
  auto e = kobayashi_entry("jorge-meeks:" + std::to_string(n), "Jorge-Meeks type, ends of multiplicity two at the n-th roots of unity",
                           from_pi_fractions(n, f));
  if (n == 2) {
    // the constructor's sign (-1)^{n-1} is undone by flipping x
    e.normalization.scale = {1, -1, 1};
    e.implicit_form = [](double t, double x, double y) {
      double b = x * std::tanh(2 * y);
      return ImplicitValue{t - b, std::abs(t) + std::abs(b)};
    };
    e.expected.certified_graph = true;
  }
  return e;
}

GalleryEntry ruled_enneper() {
  auto e = kobayashi_entry("ruled-enneper", "ruled Enneper type, all four ends at z = 1",
                           from_pi_fractions(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}));
  e.implicit_form = [](double t, double x, double y) {
    double terms[] = {4 * t * t * t / 3, 4 * t * t * x, 4 * t * x * x, -2 * t * y, t, 4 * x * x * x / 3, -2 * x * y};
    ImplicitValue v;
    for (double c : terms) v.value += c, v.scale += std::abs(c);
    return v;
  };
  return e;
}

GalleryEntry parabolic() {
  auto e = kobayashi_entry("parabolic", "parabolic catenoid type, angles (0, 0, 0, pi)",
                           from_pi_fractions(2, {{0, 1}, {0, 1}, {0, 1}, {1, 1}}));
  e.implicit_form = [](double t, double x, double y) {
    double a = 0.5 * std::expm1(4 * (t + x)), b = 2 * (t - x), c = 4 * y * y;
    return ImplicitValue{a + b - c, std::abs(a) + std::abs(b) + c};
  };
  e.expected.certified_graph = true;
  return e;
}

GalleryEntry helicoid_negative() {
  GalleryEntry e;
  e.name = "helicoid";
  e.description = "maximal helicoid, g = z, omega = i dz/z^2: ends at 0 and infinity";
  e.raw = {RationalFn::polynomial(ComplexPoly{0.0, 1.0}), RationalFn(ComplexPoly{cplx(0, 1)}, {{0.0, 2}})};
  e.expected = {.fold_type = false, .ends_on_circle = false, .fold_condition = true, .graph_condition = std::nullopt};
  return e;
}

GalleryEntry elliptic_catenoid_negative() {
  GalleryEntry e;
  e.name = "elliptic-catenoid";
  e.description = "elliptic catenoid, g = -z, omega = dz/(2 z^2): ends at 0 and infinity, conelike singularity";
  e.raw = {RationalFn::polynomial(ComplexPoly{0.0, -1.0}), RationalFn(ComplexPoly{0.5}, {{0.0, 2}})};
  e.expected = {.fold_type = false, .ends_on_circle = false, .fold_condition = false, .graph_condition = std::nullopt};
  return e;
}

GalleryEntry self_intersecting_fb() {
  auto e = kobayashi_entry("self-intersecting-fb", "n = 4, angles pi j/4, Blaschke parameters (-0.75, 0, 0)",
                           from_pi_fractions(4, {{0, 4}, {1, 4}, {2, 4}, {3, 4}, {4, 4}, {5, 4}, {6, 4}, {7, 4}},
                                             {{cplx(-0.75, 0), 0.0, 0.0}}));
  e.expected.self_intersecting = true;
  return e;
}

GalleryEntry self_intersecting_n3() {
  auto e = kobayashi_entry("self-intersecting-n3", "principal n = 3, angles (0, 3pi/4, 3pi/2, 5pi/3, 7pi/4, 11pi/6)",
                           from_pi_fractions(3, {{0, 1}, {3, 4}, {3, 2}, {5, 3}, {7, 4}, {11, 6}}));
  e.expected.self_intersecting = true;
  return e;
}

std::vector<std::string> gallery_names() {
  return {"scherk", "jorge-meeks", "ruled-enneper", "parabolic", "helicoid", "elliptic-catenoid", "self-intersecting-fb",
          "self-intersecting-n3"};
}

GalleryEntry gallery_lookup(const std::string& spec) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::optional<int> n;
  if (colon != std::string::npos) {
    int v = 0;
    auto s = spec.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw Error(ErrorKind::InvalidInput, "gallery parameter must be an integer: '" + spec + "'");
    n = v;
  }
  if (name == "scherk") return scherk(n.value_or(2));
  if (name == "jorge-meeks") return jorge_meeks(n.value_or(2));
  if (n) throw Error(ErrorKind::InvalidInput, "gallery entry '" + name + "' takes no parameter");
  if (name == "ruled-enneper") return ruled_enneper();
  if (name == "parabolic") return parabolic();
  if (name == "helicoid") return helicoid_negative();
  if (name == "elliptic-catenoid") return elliptic_catenoid_negative();
  if (name == "self-intersecting-fb") return self_intersecting_fb();
  if (name == "self-intersecting-n3") return self_intersecting_n3();
  throw Error(ErrorKind::InvalidInput, "unknown gallery entry '" + name + "'");
}

std::vector<GalleryEntry> gallery_list() {
  return {scherk(2), jorge_meeks(2), ruled_enneper(), parabolic(), helicoid_negative(), elliptic_catenoid_negative(),
          self_intersecting_fb(), self_intersecting_n3()};
}

double implicit_residual(const GalleryEntry& e, const SurfacePoint& p) {
  if (!e.implicit_form) throw Error(ErrorKind::NoImplicitForm, "gallery entry '" + e.name + "' has no implicit form");
  auto q = e.normalization.apply(p);
  auto v = e.implicit_form(q.t, q.x, q.y);
  return std::abs(v.value) / std::max(1.0, v.scale);
}

}  // namespace zmc
