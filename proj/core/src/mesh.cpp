#include "zmc/mesh.hpp"

#include <cmath>
#include <numbers>

#include "zmc/numfmt.hpp"
#include "zmc/parallel.hpp"

namespace zmc {

std::vector<std::array<int, 4>> Mesh::quads() const {
  std::vector<std::array<int, 4>> q;
  q.reserve(static_cast<size_t>(res_theta) * (res_u - 1));
  for (int i = 0; i < res_theta; ++i) {
    int i1 = (i + 1) % res_theta;
    for (int j = 0; j + 1 < res_u; ++j) q.push_back({index(i, j), index(i1, j), index(i1, j + 1), index(i, j + 1)});
  }
  return q;
}

Mesh sample_grid(const Surface& s, const GridOptions& opt, bool with_causal) {
  if (opt.res_theta < 3 || opt.res_u < 2) throw Error(ErrorKind::InvalidInput, "grid resolution must be at least 3 x 2");
  if (!(opt.margin >= kMinClearance)) throw Error(ErrorKind::InvalidInput, "margin must be at least 1e-12");
  Mesh m;
  m.res_theta = opt.res_theta;
  m.res_u = opt.res_u;
  const size_t nv = static_cast<size_t>(opt.res_theta) * opt.res_u;
  m.params.resize(nv);
  m.points.resize(nv);
  m.causal.resize(nv, Causal::Spacelike);
  const auto& dom = s.domain();
  parallel_for(opt.res_theta, [&](size_t i) {
    double th = 2 * std::numbers::pi * static_cast<double>(i) / opt.res_theta;
    double top = opt.u_max - dom.active_interval(th).cosine;
    if (!(top > opt.margin)) throw Error(ErrorKind::InvalidInput, "u_max must exceed 1 + margin");
    double ratio = std::log(top / opt.margin);
    for (int j = 0; j < opt.res_u; ++j) {
      double c = opt.margin * std::exp(ratio * j / (opt.res_u - 1));
      size_t k = i * opt.res_u + j;
      m.params[k] = dom.at_clearance(th, c);
      m.points[k] = s.eval(m.params[k]);
      if (with_causal) m.causal[k] = s.causal_at(m.params[k]);
    }
  });
  return m;
}

namespace {

std::array<double, 3> ordered(const SurfacePoint& p, TAxis a) {
  switch (a) {
    case TAxis::First: return {p.t, p.x, p.y};
    case TAxis::Second: return {p.x, p.t, p.y};
    case TAxis::Third: return {p.x, p.y, p.t};
  }
  return {p.t, p.x, p.y};
}

}  // namespace

void write_obj(std::ostream& os, const Mesh& m, TAxis t_axis) {
  for (const auto& p : m.points) {
    auto v = ordered(p, t_axis);
    os << "v " << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2]) << '\n';
  }
  for (const auto& q : m.quads()) os << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
}

void write_ply(std::ostream& os, const Mesh& m, TAxis t_axis) {
  auto quads = m.quads();
  os << "ply\nformat ascii 1.0\n";
  os << "element vertex " << m.points.size() << "\nproperty double x\nproperty double y\nproperty double z\n";
  os << "element face " << quads.size() << "\nproperty list uchar int vertex_indices\nend_header\n";
  for (const auto& p : m.points) {
    auto v = ordered(p, t_axis);
    os << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2]) << '\n';
  }
  for (const auto& q : quads) os << "4 " << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
}

void write_csv(std::ostream& os, const Mesh& m) {
  os << "u,theta,t,x,y,causal\n";
  for (size_t k = 0; k < m.points.size(); ++k) {
    const auto& p = m.points[k];
    os << format_double(m.params[k].u()) << ',' << format_double(m.params[k].theta()) << ',' << format_double(p.t) << ','
       << format_double(p.x) << ',' << format_double(p.y) << ',' << to_string(m.causal[k]) << '\n';
  }
}

}  // namespace zmc
