#pragma once

// Weierstrass data of fold type built from angular and Blaschke parameters.

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "zmc/polycheb.hpp"

namespace zmc {

// num/den multiples of pi, used when angles are given symbolically
struct PiFraction {
  long long num = 0;
  long long den = 1;
  double radians() const;
  PiFraction reduced() const;
  friend bool operator==(const PiFraction& a, const PiFraction& b);
  friend bool operator<(const PiFraction& a, const PiFraction& b);
};

struct Angle {
  double radians = 0;
  std::optional<PiFraction> exact;
  static Angle rad(double r) { return {r, std::nullopt}; }
  static Angle pi(long long num, long long den) { return {PiFraction{num, den}.radians(), PiFraction{num, den}.reduced()}; }
};

// e^{i a}, exact at multiples of pi/2 when the angle is symbolic
cplx unit_from_angle(const Angle& a);

class AngularData {
 public:
  AngularData() = default;
  static AngularData make(int n, std::vector<Angle> alphas);
  static AngularData from_radians(int n, const std::vector<double>& alphas);

  int n() const { return n_; }
  const std::vector<double>& alphas() const { return alphas_; }
  const std::vector<cplx>& alpha_units() const { return alpha_units_; }
  const std::vector<double>& betas() const { return betas_; }
  const std::vector<cplx>& beta_units() const { return beta_units_; }
  const std::vector<int>& multiplicities() const { return mult_; }
  const std::vector<double>& gammas() const { return gammas_; }
  // I_j = [lo, hi] with lo < 0 allowed for the wrapping interval j = 0
  std::pair<double, double> interval(int j) const;
  int beta_index(int alpha_index) const { return beta_of_alpha_[alpha_index]; }
  bool distinct() const { return static_cast<int>(betas_.size()) == 2 * n_; }
  bool exact() const { return exact_.has_value(); }
  const std::optional<std::vector<PiFraction>>& exact_alphas() const { return exact_; }
  const std::vector<Angle>& angles() const { return angles_; }

  // alpha_{j+1} - alpha_j with alpha_{2n} := 2 pi
  std::vector<double> gaps() const;
  std::optional<std::vector<PiFraction>> exact_gaps() const;

 private:
  int n_ = 0;
  std::vector<Angle> angles_;
  std::vector<double> alphas_, betas_, gammas_;
  std::vector<cplx> alpha_units_, beta_units_;
  std::vector<int> mult_, beta_of_alpha_;
  std::optional<std::vector<PiFraction>> exact_;
};

struct BlaschkeParams {
  std::vector<cplx> b;
};

struct PhiForms {
  std::array<RationalFn, 3> phi;  // phi_k = p_k / q dz
};

struct End {
  cplx location;
  double angle;
  int multiplicity;  // number of coinciding alpha_j
};

// Weierstrass data on the Riemann sphere, not necessarily of Kobayashi form.
struct RawWeierstrass {
  RationalFn g;
  RationalFn omega;  // omega = h(z) dz
};

struct KobayashiData {
  AngularData angular;
  BlaschkeParams blaschke;  // padded with zeros to length n-1
  RationalFn g;
  ComplexPoly omega_num, omega_den;  // omega = omega_num / omega_den dz, omega_den = q
  bool principal = true;
  cplx lambda_phase;
  PhiForms phi;
  ComplexPoly P, R;                     // g = P / R
  std::array<ComplexPoly, 3> phi_num;   // p_k, sharing the denominator q
  std::vector<End> ends;

  int n() const { return angular.n(); }
  cplx omega(cplx z) const { return omega_num(z) / omega_den(z); }
  RawWeierstrass raw() const;
};

KobayashiData build(const AngularData& angular, const BlaschkeParams& blaschke);

cplx gauss_eval(const KobayashiData& data, cplx z);

// Q = omega dg/dz
RationalFn hopf_differential(const KobayashiData& data);

struct FoldTypeReport {
  bool ends_on_circle = false;
  bool gauss_circle_ok = false;
  bool fold_condition_ok = false;
  double max_re_condition = 0;
  double scale = 1;
  std::vector<cplx> finite_ends;
  bool end_at_infinity = false;
  bool passed() const { return ends_on_circle && gauss_circle_ok && fold_condition_ok; }
};

FoldTypeReport verify_fold_type(const RawWeierstrass& data, int samples);
FoldTypeReport verify_fold_type(const KobayashiData& data, int samples);

// largest |Im residue| over all ends and the three forms
double period_check(const KobayashiData& data);

struct PrincipalCoeffs {
  int n = 0;
  AngularData angular;
  std::vector<double> A;
  double residue_sums[3] = {0, 0, 0};
  // B_{k,j} in the general convention
  std::array<std::vector<double>, 3> B() const;
};

struct GeneralCoeffs {
  AngularData angular;
  std::array<std::vector<double>, 3> B;  // B_{k,j} = Re residue of phi_k at e^{i alpha_j}
  double residue_sums[3] = {0, 0, 0};
};

std::variant<PrincipalCoeffs, GeneralCoeffs> coefficients(const KobayashiData& data);
PrincipalCoeffs principal_coefficients(const AngularData& angular);
GeneralCoeffs general_coefficients(const KobayashiData& data);

}  // namespace zmc
