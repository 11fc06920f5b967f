#include "zmc/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace zmc {

using std::numbers::pi;

double PiFraction::radians() const { return pi * static_cast<double>(num) / static_cast<double>(den); }

PiFraction PiFraction::reduced() const {
  if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in angle");
  long long g = std::gcd(num, den);
  if (g == 0) g = 1;
  PiFraction r{num / g, den / g};
  if (r.den < 0) r = {-r.num, -r.den};
  return r;
}

bool operator==(const PiFraction& a, const PiFraction& b) {
  return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

bool operator<(const PiFraction& a, const PiFraction& b) {
  // denominators are kept positive by reduced()
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

cplx unit_from_angle(const Angle& a) {
  if (!a.exact) return {std::cos(a.radians), std::sin(a.radians)};
  PiFraction f = a.exact->reduced();
  long long num = f.num % (2 * f.den);
  if (num < 0) num += 2 * f.den;
  // nearest quarter turn q, remainder eps in [-pi/4, pi/4]
  long long q = static_cast<long long>(std::llround(2.0 * static_cast<double>(num) / static_cast<double>(f.den)));
  double eps = pi * static_cast<double>(2 * num - q * f.den) / static_cast<double>(2 * f.den);
  double c = std::cos(eps), s = std::sin(eps);
  switch (((q % 4) + 4) % 4) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

// ---------------------------------------------------------------- AngularData

AngularData AngularData::from_radians(int n, const std::vector<double>& alphas) {
  std::vector<Angle> a;
  for (double x : alphas) a.push_back(Angle::rad(x));
  return make(n, std::move(a));
}

AngularData AngularData::make(int n, std::vector<Angle> alphas) {
  if (n < 2) throw Error(ErrorKind::AngularOrderError, "n must be at least 2");
  if (static_cast<int>(alphas.size()) != 2 * n)
    throw Error(ErrorKind::AngularOrderError, "expected 2n = " + std::to_string(2 * n) + " angles");
  AngularData d;
  d.n_ = n;
  bool all_exact = std::all_of(alphas.begin(), alphas.end(), [](const Angle& a) { return a.exact.has_value(); });
  for (auto& a : alphas)
    if (a.exact) {
      a.exact = a.exact->reduced();
      a.radians = a.exact->radians();
    }
  if (all_exact) {
    std::vector<PiFraction> ex;
    for (auto& a : alphas) ex.push_back(*a.exact);
    if (ex[0].num != 0) throw Error(ErrorKind::AngularOrderError, "alpha_0 must be 0");
    for (int j = 1; j < 2 * n; ++j) {
      if (ex[j] < ex[j - 1]) throw Error(ErrorKind::AngularOrderError, "angles must be nondecreasing at index " + std::to_string(j));
      // snap equal symbolic angles to one representation
      if (ex[j] == ex[j - 1]) alphas[j] = alphas[j - 1];
    }
    if (!(ex.back() < PiFraction{2, 1})) throw Error(ErrorKind::AngularOrderError, "angles must be below 2 pi");
    d.exact_ = ex;
  } else {
    if (std::abs(alphas[0].radians) > 1e-15) throw Error(ErrorKind::AngularOrderError, "alpha_0 must be 0");
    alphas[0] = Angle::pi(0, 1);
    for (int j = 1; j < 2 * n; ++j) {
      if (!std::isfinite(alphas[j].radians)) throw Error(ErrorKind::AngularOrderError, "non-finite angle");
      if (alphas[j].radians < alphas[j - 1].radians - 1e-12)
        throw Error(ErrorKind::AngularOrderError, "angles must be nondecreasing at index " + std::to_string(j));
      if (alphas[j].radians - alphas[j - 1].radians <= 1e-12) alphas[j] = alphas[j - 1];
    }
    if (alphas.back().radians >= 2 * pi) throw Error(ErrorKind::AngularOrderError, "angles must be below 2 pi");
  }
  d.angles_ = alphas;
  for (int j = 0; j < 2 * n; ++j) {
    d.alphas_.push_back(alphas[j].radians);
    d.alpha_units_.push_back(unit_from_angle(alphas[j]));
    if (j == 0 || alphas[j].radians != alphas[j - 1].radians) {
      d.betas_.push_back(alphas[j].radians);
      d.beta_units_.push_back(d.alpha_units_.back());
      d.mult_.push_back(1);
    } else {
      ++d.mult_.back();
    }
    d.beta_of_alpha_.push_back(static_cast<int>(d.betas_.size()) - 1);
  }
  const size_t N = d.betas_.size();
  for (size_t j = 0; j < N; ++j) d.gammas_.push_back(0.5 * (d.betas_[j] + (j + 1 < N ? d.betas_[j + 1] : 2 * pi)));
  return d;
}

std::pair<double, double> AngularData::interval(int j) const {
  const int N = static_cast<int>(betas_.size());
  double lo = j == 0 ? gammas_[N - 1] - 2 * pi : gammas_[j - 1];
  return {lo, gammas_[j]};
}

std::vector<double> AngularData::gaps() const {
  std::vector<double> g;
  for (int j = 0; j < 2 * n_; ++j) g.push_back((j + 1 < 2 * n_ ? alphas_[j + 1] : 2 * pi) - alphas_[j]);
  return g;
}

std::optional<std::vector<PiFraction>> AngularData::exact_gaps() const {
  if (!exact_) return std::nullopt;
  std::vector<PiFraction> g;
  const auto& a = *exact_;
  for (int j = 0; j < 2 * n_; ++j) {
    PiFraction next = j + 1 < 2 * n_ ? a[j + 1] : PiFraction{2, 1};
    g.push_back(PiFraction{next.num * a[j].den - a[j].num * next.den, next.den * a[j].den}.reduced());
  }
  return g;
}

// ------------------------------------------------------------------- building

namespace {

ComplexPoly blaschke_denominator(const std::vector<cplx>& b) {
  ComplexPoly R = ComplexPoly::constant(1.0);
  for (cplx bi : b) R = R * ComplexPoly{1.0, -std::conj(bi)};
  return R;
}

std::vector<Pole> end_poles(const AngularData& a) {
  std::vector<Pole> poles;
  for (size_t j = 0; j < a.betas().size(); ++j) poles.push_back({a.beta_units()[j], a.multiplicities()[j]});
  return poles;
}

}  // namespace

RawWeierstrass KobayashiData::raw() const {
  return {g, RationalFn(omega_num, end_poles(angular), omega_den.leading())};
}

KobayashiData build(const AngularData& angular, const BlaschkeParams& blaschke) {
  const int n = angular.n();
  if (n < 2 || angular.alphas().empty()) throw Error(ErrorKind::AngularOrderError, "angular data not initialised");
  if (static_cast<int>(blaschke.b.size()) > n - 1)
    throw Error(ErrorKind::InvalidInput, "at most n-1 Blaschke parameters");
  KobayashiData d;
  d.angular = angular;
  d.blaschke = blaschke;
  d.blaschke.b.resize(n - 1, cplx{});
  for (cplx b : d.blaschke.b) {
    if (!(std::abs(b) < 1.0)) throw Error(ErrorKind::BlaschkeOutOfDisk, "|b_i| must be below 1");
    if (b != cplx{}) d.principal = false;
  }
  if (n == 2 && !d.principal)
    throw Error(ErrorKind::InvalidInput, "for n = 2 the Blaschke parameter is normalised to 0; every such surface is of principal type");

  d.P = ComplexPoly::from_roots(d.blaschke.b);
  d.R = blaschke_denominator(d.blaschke.b);
  std::vector<Pole> gpoles;
  cplx glead = 1.0;
  for (cplx b : d.blaschke.b)
    if (b != cplx{}) {
      gpoles.push_back({1.0 / std::conj(b), 1});
      glead *= -std::conj(b);
    }
  d.g = RationalFn(d.P, gpoles, glead);

  // Lambda = exp(i sum alpha / 2), assembled from half-angle units
  cplx lambda = 1.0;
  for (const auto& a : angular.angles()) {
    Angle half = a.exact ? Angle::pi(a.exact->num, 2 * a.exact->den) : Angle::rad(a.radians / 2);
    lambda *= unit_from_angle(half);
  }
  d.lambda_phase = lambda;
  d.omega_den = ComplexPoly::from_roots(angular.alpha_units(), std::conj(lambda));
  const cplx I{0, 1};
  ComplexPoly R2 = d.R * d.R, P2 = d.P * d.P;
  d.omega_num = R2 * I;
  d.phi_num[0] = d.P * d.R * (-2.0 * I);
  d.phi_num[1] = (R2 + P2) * I;
  d.phi_num[2] = -(R2 - P2);
  auto poles = end_poles(angular);
  for (int k = 0; k < 3; ++k) d.phi.phi[k] = RationalFn(d.phi_num[k], poles, std::conj(lambda));
  for (size_t j = 0; j < angular.betas().size(); ++j)
    d.ends.push_back({angular.beta_units()[j], angular.betas()[j], angular.multiplicities()[j]});
  return d;
}

cplx gauss_eval(const KobayashiData& data, cplx z) {
  cplx den = data.R(z);
  if (std::abs(den) <= 1e-14 * data.R.abs_sum(z)) throw Error(ErrorKind::PoleHit, "z is a pole of g");
  return data.P(z) / den;
}

RationalFn hopf_differential(const KobayashiData& data) {
  const cplx I{0, 1};
  ComplexPoly num = (data.P.derivative() * data.R - data.P * data.R.derivative()) * I;
  return RationalFn(num, end_poles(data.angular), data.omega_den.leading());
}

// ---------------------------------------------------------------- fold checks

namespace {

// order of h(z) dz at infinity
int order_at_infinity(const RationalFn& h) {
  if (h.numerator().is_zero()) return 1 << 20;
  return h.denominator().degree() - h.numerator().degree() - 2;
}

}  // namespace

FoldTypeReport verify_fold_type(const RawWeierstrass& data, int samples) {
  if (samples < 8) throw Error(ErrorKind::InvalidInput, "at least 8 samples");
  FoldTypeReport rep;
  const RationalFn& g = data.g;
  const RationalFn& w = data.omega;
  RationalFn gw = g * w, ggw = g * gw;

  std::vector<cplx> ends;
  for (const RationalFn* f : std::initializer_list<const RationalFn*>{&w, &gw, &ggw}) {
    for (auto& p : f->poles()) ends.push_back(p.location);
    if (order_at_infinity(*f) < 0) rep.end_at_infinity = true;
  }
  for (auto& p : cluster_roots(ends, 1e-9)) rep.finite_ends.push_back(p.location);
  rep.ends_on_circle = !rep.end_at_infinity;
  for (cplx e : rep.finite_ends)
    if (std::abs(std::abs(e) - 1.0) > 1e-9) rep.ends_on_circle = false;

  // (ii) |g| = 1 on the circle and |g| < 1 inside
  rep.gauss_circle_ok = true;
  auto safe_g = [&](cplx z, cplx& out) {
    cplx den = g.denominator()(z);
    if (std::abs(den) <= 1e-14 * g.denominator().abs_sum(z)) return false;
    out = g.numerator()(z) / den;
    return true;
  };
  for (int k = 0; k < samples; ++k) {
    double th = 2 * pi * (k + 0.5) / samples;
    cplx v;
    if (safe_g(std::polar(1.0, th), v) && std::abs(std::abs(v) - 1.0) >= 1e-10) rep.gauss_circle_ok = false;
    for (double rho : {0.0, 0.25, 0.5, 0.75})
      if (safe_g(std::polar(rho, th), v) && !(std::abs(v) < 1.0)) rep.gauss_circle_ok = false;
  }

  // (iii) Re[g' / (g^2 h)] on the circle
  const ComplexPoly& Ng = g.numerator();
  const ComplexPoly& Dg = g.denominator();
  ComplexPoly num = (Ng.derivative() * Dg - Ng * Dg.derivative()) * w.denominator();
  ComplexPoly den = Ng * Ng * w.numerator();
  double max_re = 0, scale = 1;
  for (int k = 0; k < samples; ++k) {
    cplx z = std::polar(1.0, 2 * pi * (k + 0.5) / samples);
    cplx d = den(z);
    if (std::abs(d) <= 1e-14 * den.abs_sum(z)) continue;
    cplx v = num(z) / d;
    max_re = std::max(max_re, std::abs(v.real()));
    scale = std::max(scale, std::abs(v));
  }
  rep.max_re_condition = max_re;
  rep.scale = scale;
  rep.fold_condition_ok = max_re < 1e-9 * scale;
  return rep;
}

FoldTypeReport verify_fold_type(const KobayashiData& data, int samples) { return verify_fold_type(data.raw(), samples); }

double period_check(const KobayashiData& data) {
  double worst = 0;
  for (const auto& f : data.phi.phi)
    for (const auto& p : f.poles()) worst = std::max(worst, std::abs(residue(f, p.location).imag()));
  return worst;
}

// ---------------------------------------------------------------- coefficients

std::array<std::vector<double>, 3> PrincipalCoeffs::B() const {
  std::array<std::vector<double>, 3> b;
  for (size_t j = 0; j < A.size(); ++j) {
    cplx e = std::pow(angular.alpha_units()[j], n - 1);
    b[0].push_back(-2 * A[j]);
    b[1].push_back(2 * A[j] * e.real());
    b[2].push_back(2 * A[j] * e.imag());
  }
  return b;
}

PrincipalCoeffs principal_coefficients(const AngularData& angular) {
  if (!angular.distinct())
    throw Error(ErrorKind::RepeatedAngles, "closed form needs distinct angles; use the degenerate n=2 forms or quadrature");
  PrincipalCoeffs c;
  c.n = angular.n();
  c.angular = angular;
  const int n = c.n;
  const auto& a = angular.alphas();
  const double sign = (n + 1) % 2 == 0 ? 1.0 : -1.0;
  for (int j = 0; j < 2 * n; ++j) {
    double prod = 1;
    for (int i = 0; i < 2 * n; ++i)
      if (i != j) prod *= std::sin(0.5 * (a[j] - a[i]));
    c.A.push_back(sign / std::ldexp(prod, 2 * n - 1));
  }
  for (int j = 0; j < 2 * n; ++j) {
    cplx e = std::pow(angular.alpha_units()[j], n - 1);
    c.residue_sums[0] += c.A[j];
    c.residue_sums[1] += c.A[j] * e.real();
    c.residue_sums[2] += c.A[j] * e.imag();
  }
  return c;
}

GeneralCoeffs general_coefficients(const KobayashiData& data) {
  if (!data.angular.distinct())
    throw Error(ErrorKind::RepeatedAngles, "closed form needs distinct angles; use quadrature");
  GeneralCoeffs c;
  c.angular = data.angular;
  for (int k = 0; k < 3; ++k) {
    for (cplx e : data.angular.alpha_units()) {
      // a cancelled factor leaves a removable point with zero residue
      const auto& f = data.phi.phi[k];
      double b = f.find_pole(e) < 0 ? 0.0 : residue(f, e).real();
      c.B[k].push_back(b);
      c.residue_sums[k] += b;
    }
  }
  return c;
}

std::variant<PrincipalCoeffs, GeneralCoeffs> coefficients(const KobayashiData& data) {
  if (data.principal) return principal_coefficients(data.angular);
  return general_coefficients(data);
}

}  // namespace zmc
