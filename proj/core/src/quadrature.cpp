#include "zmc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace zmc {

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b;
  Vec3 value;
  double err;
  bool operator<(const Piece& o) const { return err < o.err; }
};

Piece gk(const std::function<Vec3(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  Vec3 k{}, g{};
  Vec3 fc = f(c);
  for (int i = 0; i < 3; ++i) {
    k[i] = wgk[7] * fc[i];
    g[i] = wg[3] * fc[i];
  }
  for (int j = 0; j < 7; ++j) {
    Vec3 f1 = f(c - h * xgk[j]), f2 = f(c + h * xgk[j]);
    for (int i = 0; i < 3; ++i) {
      k[i] += wgk[j] * (f1[i] + f2[i]);
      if (j % 2 == 1) g[i] += wg[j / 2] * (f1[i] + f2[i]);
    }
  }
  Piece p{a, b, {}, 0};
  for (int i = 0; i < 3; ++i) {
    p.value[i] = k[i] * h;
    p.err = std::max(p.err, std::abs((k[i] - g[i]) * h));
  }
  return p;
}

}  // namespace

QuadResult integrate_gk15(const std::function<Vec3(double)>& f, double a, double b, double abs_tol,
                          double rel_tol, int max_intervals) {
  QuadResult r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  if (b < a) {
    r = integrate_gk15(f, b, a, abs_tol, rel_tol, max_intervals);
    for (double& v : r.value) v = -v;
    return r;
  }
  std::priority_queue<Piece> heap;
  Piece first = gk(f, a, b);
  Vec3 total = first.value;
  double err = first.err;
  heap.push(first);
  r.intervals = 1;
  while (true) {
    double mag = std::max({std::abs(total[0]), std::abs(total[1]), std::abs(total[2])});
    if (err <= std::max(abs_tol, rel_tol * mag) || r.intervals >= max_intervals) break;
    Piece worst = heap.top();
    double m = 0.5 * (worst.a + worst.b);
    if (m <= worst.a || m >= worst.b) break;  // cannot split further
    heap.pop();
    Piece l = gk(f, worst.a, m), h = gk(f, m, worst.b);
    for (int i = 0; i < 3; ++i) total[i] += l.value[i] + h.value[i] - worst.value[i];
    err += l.err + h.err - worst.err;
    heap.push(l);
    heap.push(h);
    ++r.intervals;
  }
  // exact resummation, avoiding drift from the running update
  r.value = {};
  r.error = 0;
  while (!heap.empty()) {
    for (int i = 0; i < 3; ++i) r.value[i] += heap.top().value[i];
    r.error += heap.top().err;
    heap.pop();
  }
  double mag = std::max({std::abs(r.value[0]), std::abs(r.value[1]), std::abs(r.value[2])});
  r.converged = r.error <= std::max(abs_tol, rel_tol * mag);
  return r;
}

}  // namespace zmc
