#pragma once

#include <array>
#include <functional>

namespace zmc {

using Vec3 = std::array<double, 3>;

struct QuadResult {
  Vec3 value{};
  double error = 0;
  int intervals = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (7/15) for a 3-vector integrand.
// Stops when the summed error estimate is below max(abs_tol, rel_tol*|value|).
QuadResult integrate_gk15(const std::function<Vec3(double)>& f, double a, double b, double abs_tol,
                          double rel_tol = 0.0, int max_intervals = 4000);

}  // namespace zmc
