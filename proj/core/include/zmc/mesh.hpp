#pragma once

// Grid sampling of the extended surface over the extension domain and
// OBJ / PLY / CSV writers.

#include <array>
#include <ostream>
#include <vector>

#include "zmc/surface.hpp"

namespace zmc {

struct GridOptions {
  int res_theta = 100;
  int res_u = 100;
  double margin = 1e-3;  // smallest clearance above the boundary
  double u_max = 10.0;   // outermost ring, measured as u
};

// Vertex (i, j) sits at theta_i = 2 pi i / res_theta and clearance growing
// geometrically from margin to u_max - max cos, index i * res_u + j.
struct Mesh {
  int res_theta = 0, res_u = 0;
  std::vector<ExtendedPoint> params;
  std::vector<SurfacePoint> points;
  std::vector<Causal> causal;

  int index(int i, int j) const { return i * res_u + j; }
  // quads wrap around in theta
  std::vector<std::array<int, 4>> quads() const;
};

Mesh sample_grid(const Surface& s, const GridOptions& opt, bool with_causal = true);

// Which OBJ/PLY component receives t; the others keep the order x, y.
enum class TAxis { First, Second, Third };

void write_obj(std::ostream& os, const Mesh& m, TAxis t_axis = TAxis::First);
void write_ply(std::ostream& os, const Mesh& m, TAxis t_axis = TAxis::First);
// columns u,theta,t,x,y,causal
void write_csv(std::ostream& os, const Mesh& m);

}  // namespace zmc
