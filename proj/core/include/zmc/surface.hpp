#pragma once

// The analytically extended surface on the extension domain: closed forms,
// the real 1-forms in (u, theta), and quadrature cross-checks.

#include <array>
#include <optional>
#include <vector>

#include "zmc/domain.hpp"
#include "zmc/quadrature.hpp"
#include "zmc/weierstrass.hpp"

namespace zmc {

// (t, x, y) = (x_0, x_1, x_2), signature (-++)
struct SurfacePoint {
  double t = 0, x = 0, y = 0;
  double operator[](int k) const { return k == 0 ? t : k == 1 ? x : y; }
  double& operator[](int k) { return k == 0 ? t : k == 1 ? x : y; }
  static SurfacePoint from(const Vec3& v) { return {v[0], v[1], v[2]}; }
  Vec3 vec() const { return {t, x, y}; }
};

double distance(const SurfacePoint& a, const SurfacePoint& b);

// Re sum_nu c_nu e^{i nu theta}
struct TrigPoly {
  int lo = 0;
  std::vector<cplx> c;
  double operator()(double theta) const;
  double eval(const std::vector<cplx>& powers, int powers_lo) const;
  int hi() const { return lo + static_cast<int>(c.size()) - 1; }
  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
};

// Re phi_k = (x_k du + y_k dtheta) / (2 4^n prod_j (u - cos(theta - alpha_j)))
// with x_k = sum_s X[k][s](theta) U_s(u) and y_k = sum_s Y[k][s](theta) T_s(u).
struct OneFormUV {
  int n = 0;
  AngularData angular;
  std::array<std::vector<TrigPoly>, 3> X, Y;

  struct Values {
    Vec3 x{}, y{};
  };
  Values numerators(double u, double theta) const;
  // 2 4^n prod over all 2n angles, assembled from the clearances of p
  double denominator(const ExtendedPoint& p) const;
  // (d/du, d/dtheta) of the three coordinates
  std::array<Vec3, 2> partials(const ExtendedPoint& p) const;
};

OneFormUV build_oneforms(const KobayashiData& data);

SurfacePoint eval_principal(const PrincipalCoeffs& c, const ExtendedPoint& p);
SurfacePoint eval_general_distinct(const GeneralCoeffs& c, const ExtendedPoint& p);

enum class DegeneratePattern { DoubleSimpleSimple, DoubleDouble, TripleSimple, Quadruple };
struct DegenerateParams {
  DegeneratePattern pattern;
  double alpha = 0, beta = 0;
};
// recognises (0,0,a,b), (0,0,a,a), (0,0,0,a) and (0,0,0,0)
std::optional<DegenerateParams> degenerate_pattern(const AngularData& angular);
SurfacePoint eval_degenerate_n2(const AngularData& angular, const ExtendedPoint& p);

SurfacePoint integrate_oneform(const OneFormUV& forms, const ExtendedPoint& from, const ExtendedPoint& to,
                               const SurfacePoint& base_value);

SurfacePoint eval_on_disk(const KobayashiData& data, cplx z, cplx z0 = 0.0, const SurfacePoint& f0 = {});

// Re of the loop integral of (phi_0, phi_1, phi_2) around a circle; zero when
// the period condition holds for the ends it encloses.
SurfacePoint loop_displacement(const KobayashiData& data, cplx center, double radius);

enum class Causal { Spacelike, Lightlike, Timelike };
const char* to_string(Causal c);
Causal causal_character(double lx, double ly, double band = 1e-6);

enum class EvalMethod { Principal, GeneralDistinct, DegenerateN2, Quadrature };
const char* to_string(EvalMethod m);

// Smallest clearance the closed forms accept.
inline constexpr double kMinClearance = 1e-12;

// One evaluator per surface, choosing the closed form when one exists.
// The integration constant is fixed by f(p_inf) = 0.
class Surface {
 public:
  explicit Surface(KobayashiData data);

  const KobayashiData& data() const { return data_; }
  const ExtensionDomain& domain() const { return domain_; }
  const OneFormUV& oneforms() const { return forms_; }
  EvalMethod method() const { return method_; }
  int n() const { return data_.n(); }

  SurfacePoint eval(const ExtendedPoint& p) const;
  SurfacePoint eval_by_quadrature(const ExtendedPoint& p) const;
  std::array<Vec3, 2> partials(const ExtendedPoint& p) const;  // d/du, d/dtheta
  // derivatives in the chart (a, b) = (cos theta, sin theta) / u around p_inf
  std::array<Vec3, 2> chart_partials(const ExtendedPoint& p) const;
  Causal causal_at(const ExtendedPoint& p) const;

 private:
  KobayashiData data_;
  ExtensionDomain domain_;
  OneFormUV forms_;
  EvalMethod method_;
  std::optional<PrincipalCoeffs> principal_;
  std::optional<GeneralCoeffs> general_;
};

}  // namespace zmc
