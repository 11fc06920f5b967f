#pragma once

// Graph and immersion criteria, Jacobians, inversion of (x_1, x_2) to the
// graph function lambda, the zero mean curvature residual and injectivity
// sampling.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zmc/mesh.hpp"
#include "zmc/surface.hpp"

namespace zmc {

// d(x_1, x_2)/d(u, theta)
double jacobian_x1x2(const Surface& s, const ExtendedPoint& p);
// (d(x_0, x_1)/d(u, theta), d(x_0, x_2)/d(u, theta))
std::pair<double, double> jacobians_x0(const Surface& s, const ExtendedPoint& p);

// The same three Jacobians formed from the 1-form numerators, for any data.
std::array<double, 3> jacobians_from_oneforms(const Surface& s, const ExtendedPoint& p);

enum class ConditionStatus { StrictlySatisfied, BoundaryCase, Violated };
const char* to_string(ConditionStatus c);

struct Witness {
  double u = 0, theta = 0;
};

struct Umbilic {
  cplx location;
  int multiplicity = 1;
};

struct ConditionReport {
  // every gap at most pi/(n-1); strict means every gap below it
  ConditionStatus graph_condition = ConditionStatus::StrictlySatisfied;
  // every gap at most 2 pi/(n-1)
  ConditionStatus immersion_condition = ConditionStatus::StrictlySatisfied;
  std::optional<Witness> graph_witness, immersion_witness;
  // a condition is violated but no witness can be built (Blaschke factors present)
  bool witness_unknown = false;
  int graph_violated_gap = -1, immersion_violated_gap = -1;
  bool distinct_angles = true;
  bool exact_arithmetic = false;  // gaps compared as rational multiples of pi
  std::vector<Umbilic> umbilics;
};

ConditionReport check_conditions(const AngularData& angular, bool principal = true);

struct GraphPoint {
  ExtendedPoint p;
  double lambda = 0;
  double residual = 0;  // |(x_1, x_2)(p) - (x, y)|
  int iterations = 0;
};

struct InverterOptions {
  // entire graphs certified by other means (the degenerate n = 2 examples)
  bool certified = false;
  // skip the cache and start every solve at (u, theta) = (2, 0)
  bool cold_start = false;
  double tolerance = 1e-10;
};

// Newton inversion of (x_1, x_2) on an entire graph. Throws PreconditionUnmet
// when the graph condition is not known to hold.
class GraphInverter {
 public:
  explicit GraphInverter(const Surface& s, InverterOptions opt = {});
  GraphPoint invert(double x, double y) const;
  const Surface& surface() const { return s_; }

 private:
  struct CacheEntry {
    double x, y;
    ExtendedPoint p;
  };
  std::optional<GraphPoint> newton(double x, double y, ExtendedPoint start, int max_iter) const;
  GraphPoint homotopy(double x, double y) const;
  const Surface& s_;
  InverterOptions opt_;
  std::vector<CacheEntry> cache_;
};

bool graph_precondition(const Surface& s, bool certified);

GraphPoint invert_graph(const Surface& s, double x, double y, InverterOptions opt = {});

// (1 - l_y^2) l_xx + 2 l_x l_y l_xy + (1 - l_x^2) l_yy on a 3 x 3 stencil
double zmc_residual(const std::function<double(double, double)>& lambda, double x, double y, double h);
double zmc_residual(const GraphInverter& inv, double x, double y, double h);
// central-difference gradient (l_x, l_y)
std::pair<double, double> graph_gradient(const std::function<double(double, double)>& lambda, double x, double y,
                                         double h);

std::pair<double, double> psi_map(double u, double theta);

struct Collision {
  ExtendedPoint a, b;  // triangle centroids in the parameter domain
  SurfacePoint where;
};

struct InjectivityOptions {
  int resolution = 200;
  double margin = 1e-3;
  double u_max = 10.0;
  double tol_param = 1e-2;  // in the chart (a, b) = e^{i theta} / u
  size_t max_reports = 1000;
};

// Triangle pairs of the sampled mesh that intersect although their
// parameter triangles are apart.
std::vector<Collision> injectivity_scan(const Surface& s, const InjectivityOptions& opt = {});
std::vector<Collision> injectivity_scan(const Mesh& m, const InjectivityOptions& opt = {});

struct ClassificationReport {
  FoldTypeReport fold;
  double period_residual = 0;
  ConditionReport conditions;
  std::vector<End> ends;
  bool principal = true;
  EvalMethod method = EvalMethod::Principal;
  bool entire_graph = false;  // distinct angles and graph condition not violated
};

// zeros of dg inside the open unit disk
std::vector<Umbilic> umbilics(const KobayashiData& data);

ClassificationReport classify(const KobayashiData& data);

}  // namespace zmc
