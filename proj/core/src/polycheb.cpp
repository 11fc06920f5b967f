#include "zmc/polycheb.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "zmc/numfmt.hpp"

namespace zmc {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::PoleNotFound: return "PoleNotFound";
    case ErrorKind::DegreeError: return "DegreeError";
    case ErrorKind::ParityError: return "ParityError";
    case ErrorKind::BlaschkeOutOfDisk: return "BlaschkeOutOfDisk";
    case ErrorKind::AngularOrderError: return "AngularOrderError";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::RepeatedAngles: return "RepeatedAngles";
    case ErrorKind::OutOfDisk: return "OutOfDisk";
    case ErrorKind::BelowOne: return "BelowOne";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::PathBlocked: return "PathBlocked";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorKind::NoImplicitForm: return "NoImplicitForm";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NumericFailure: return "NumericFailure";
  }
  return "Unknown";
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0 as well
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------- ComplexPoly

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { normalize(); }

void ComplexPoly::normalize() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
}

ComplexPoly ComplexPoly::constant(cplx c) { return ComplexPoly(std::vector<cplx>{c}); }

ComplexPoly ComplexPoly::monomial(cplx c, int degree) {
  std::vector<cplx> v(degree + 1);
  v[degree] = c;
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::from_roots(std::span<const cplx> roots, cplx lead) {
  std::vector<cplx> v{lead};
  for (cplx r : roots) {
    std::vector<cplx> w(v.size() + 1);
    for (size_t k = 0; k < v.size(); ++k) {
      w[k + 1] += v[k];
      w[k] -= r * v[k];
    }
    v = std::move(w);
  }
  return ComplexPoly(std::move(v));
}

double ComplexPoly::max_abs_coeff() const {
  double m = 0;
  for (auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

cplx ComplexPoly::operator()(cplx z) const {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double ComplexPoly::abs_sum(cplx z) const {
  double az = std::abs(z), acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * az + std::abs(*it);
  return acc;
}

ComplexPoly ComplexPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return ComplexPoly(std::move(d));
}

std::vector<cplx> ComplexPoly::taylor(cplx z0, int k) const {
  // repeated synthetic division by (z - z0)
  std::vector<cplx> work = c_, out;
  for (int i = 0; i < k; ++i) {
    if (work.empty()) {
      out.push_back(0.0);
      continue;
    }
    std::vector<cplx> q(work.size() > 1 ? work.size() - 1 : 0);
    cplx acc{};
    for (size_t j = work.size(); j-- > 0;) {
      acc = acc * z0 + work[j];
      if (j > 0) q[j - 1] = acc;
    }
    out.push_back(acc);
    work = std::move(q);
  }
  return out;
}

ComplexPoly ComplexPoly::deflate(cplx z0) const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> q(c_.size() - 1);
  cplx acc{};
  for (size_t j = c_.size(); j-- > 1;) {
    acc = acc * z0 + c_[j];
    q[j - 1] = acc;
  }
  return ComplexPoly(std::move(q));
}

ComplexPoly ComplexPoly::trimmed(double tol) const {
  auto v = c_;
  while (!v.empty() && std::abs(v.back()) <= tol) v.pop_back();
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::operator+(const ComplexPoly& o) const {
  std::vector<cplx> v(std::max(c_.size(), o.c_.size()));
  for (size_t k = 0; k < v.size(); ++k) v[k] = coeff(k) + o.coeff(k);
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::operator-(const ComplexPoly& o) const {
  std::vector<cplx> v(std::max(c_.size(), o.c_.size()));
  for (size_t k = 0; k < v.size(); ++k) v[k] = coeff(k) - o.coeff(k);
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::operator*(const ComplexPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<cplx> v(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::operator*(cplx s) const {
  auto v = c_;
  for (auto& c : v) c *= s;
  return ComplexPoly(std::move(v));
}

double tol_root(const ComplexPoly& p) { return 1e-9 * (1.0 + p.max_abs_coeff()); }

// ----------------------------------------------------------------- RationalFn

namespace {

constexpr double kPoleMergeTol = 1e-9;

std::vector<Pole> merge_poles(std::vector<Pole> in) {
  std::vector<Pole> out;
  for (auto& p : in) {
    if (p.multiplicity <= 0) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const Pole& q) {
      return std::abs(q.location - p.location) <= kPoleMergeTol * (1 + std::abs(p.location));
    });
    if (it == out.end())
      out.push_back(p);
    else
      it->multiplicity += p.multiplicity;
  }
  return out;
}

ComplexPoly denominator_of(const std::vector<Pole>& poles, cplx lead) {
  std::vector<cplx> roots;
  for (auto& p : poles)
    for (int k = 0; k < p.multiplicity; ++k) roots.push_back(p.location);
  return ComplexPoly::from_roots(roots, lead);
}

}  // namespace

RationalFn::RationalFn(ComplexPoly numerator, std::vector<Pole> poles, cplx den_lead)
    : num_(std::move(numerator)), poles_(merge_poles(std::move(poles))), lead_(den_lead) {
  if (lead_ == cplx{}) throw Error(ErrorKind::DegreeError, "denominator identically zero");
  for (auto& p : poles_) {
    while (p.multiplicity > 0 && !num_.is_zero() &&
           std::abs(num_(p.location)) <= 1e-9 * num_.abs_sum(p.location)) {
      num_ = num_.deflate(p.location);
      --p.multiplicity;
    }
    if (p.multiplicity == 0) removed_.push_back(p.location);
  }
  std::erase_if(poles_, [](const Pole& p) { return p.multiplicity <= 0; });
  if (num_.is_zero()) poles_.clear();
  den_ = denominator_of(poles_, lead_);
}

int RationalFn::total_pole_order() const {
  int s = 0;
  for (auto& p : poles_) s += p.multiplicity;
  return s;
}

cplx RationalFn::operator()(cplx z) const {
  cplx d = den_(z);
  if (d == cplx{}) throw Error(ErrorKind::PoleHit, "evaluation at a pole");
  return num_(z) / d;
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
  auto poles = poles_;
  poles.insert(poles.end(), o.poles_.begin(), o.poles_.end());
  return RationalFn(num_ * o.num_, std::move(poles), lead_ * o.lead_);
}

RationalFn RationalFn::operator*(cplx s) const { return RationalFn(num_ * s, poles_, lead_); }

RationalFn RationalFn::derivative() const {
  // f' = (N' E - N W) / (lead prod (z-p)^(m+1)), E = prod (z-p), W = sum m_i E/(z-p_i)
  std::vector<cplx> roots;
  for (auto& p : poles_) roots.push_back(p.location);
  ComplexPoly E = ComplexPoly::from_roots(roots);
  ComplexPoly W;
  for (size_t i = 0; i < poles_.size(); ++i) {
    std::vector<cplx> others;
    for (size_t j = 0; j < poles_.size(); ++j)
      if (j != i) others.push_back(poles_[j].location);
    W = W + ComplexPoly::from_roots(others, static_cast<double>(poles_[i].multiplicity));
  }
  auto poles = poles_;
  for (auto& p : poles) ++p.multiplicity;
  return RationalFn(num_.derivative() * E - num_ * W, std::move(poles), lead_);
}

int RationalFn::find_pole(cplx z) const {
  double tol = tol_root(den_);
  for (size_t i = 0; i < poles_.size(); ++i)
    if (std::abs(poles_[i].location - z) <= tol) return static_cast<int>(i);
  return -1;
}

// ------------------------------------------------------------------ Chebyshev

double cheb_T(int n, double u) {
  if (n == 0) return 1.0;
  double a = 1.0, b = u;
  for (int k = 1; k < n; ++k) {
    double c = 2 * u * b - a;
    a = b;
    b = c;
  }
  return b;
}

double cheb_U(int n, double u) {
  if (n < 0) return 0.0;
  if (n == 0) return 1.0;
  double a = 1.0, b = 2 * u;
  for (int k = 1; k < n; ++k) {
    double c = 2 * u * b - a;
    a = b;
    b = c;
  }
  return b;
}

cplx ChebyshevCombo::operator()(double u) const {
  cplx s{};
  for (auto& t : terms) s += t.coefficient * (t.kind == ChebKind::FirstKind ? cheb_T(t.index, u) : cheb_U(t.index, u));
  return s;
}

std::string ChebyshevCombo::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms) {
    if (!first) os << " + ";
    first = false;
    if (t.coefficient.imag() == 0.0)
      os << format_double(t.coefficient.real());
    else
      os << "(" << format_double(t.coefficient.real()) << (t.coefficient.imag() < 0 ? "-" : "+")
         << format_double(std::abs(t.coefficient.imag())) << "i)";
    os << "*" << (t.kind == ChebKind::FirstKind ? "T" : "U") << t.index;
  }
  return os.str();
}

// ------------------------------------------------------------------- residues

namespace {

// Laurent coefficients c_{-m}..c_{-1} at pole index i
std::vector<cplx> laurent_principal(const RationalFn& f, size_t i) {
  const auto& poles = f.poles();
  const cplx p = poles[i].location;
  const int m = poles[i].multiplicity;
  std::vector<cplx> others;
  for (size_t j = 0; j < poles.size(); ++j)
    if (j != i)
      for (int k = 0; k < poles[j].multiplicity; ++k) others.push_back(poles[j].location);
  ComplexPoly rest = ComplexPoly::from_roots(others, f.den_lead());
  auto n = f.numerator().taylor(p, m);
  auto d = rest.taylor(p, m);
  // series division s = n / d
  std::vector<cplx> s(m);
  for (int k = 0; k < m; ++k) {
    cplx acc = n[k];
    for (int j = 0; j < k; ++j) acc -= s[j] * d[k - j];
    s[k] = acc / d[0];
  }
  return s;  // s[k] multiplies (z-p)^(k-m)
}

}  // namespace

cplx residue(const RationalFn& f, cplx pole) {
  int i = f.find_pole(pole);
  if (i < 0) {
    for (cplx r : f.removable_points())
      if (std::abs(r - pole) <= tol_root(f.denominator())) return 0.0;
    throw Error(ErrorKind::PoleNotFound, "no denominator root near the requested point");
  }
  auto s = laurent_principal(f, i);
  return s.back();
}

std::vector<PrincipalPart> partial_fractions(const RationalFn& f) {
  if (!f.numerator().is_zero() && f.numerator().degree() >= f.denominator().degree())
    throw Error(ErrorKind::DegreeError, "numerator degree must be below denominator degree");
  std::vector<PrincipalPart> out;
  for (size_t i = 0; i < f.poles().size(); ++i) {
    auto s = laurent_principal(f, i);
    PrincipalPart pp{f.poles()[i].location, f.poles()[i].multiplicity, {}};
    for (int k = pp.order - 1; k >= 0; --k) pp.coeffs.push_back(s[k]);
    out.push_back(std::move(pp));
  }
  return out;
}

cplx eval_principal_parts(std::span<const PrincipalPart> parts, cplx z) {
  cplx s{};
  for (auto& pp : parts) {
    cplx inv = 1.0 / (z - pp.pole), pw = inv;
    for (auto c : pp.coeffs) {
      s += c * pw;
      pw *= inv;
    }
  }
  return s;
}

// ----------------------------------------------------------------- reciprocal

ReciprocalClass reciprocal_class(const ComplexPoly& p, double rel_tol) {
  ReciprocalClass rc;
  if (p.is_zero()) return rc;
  const auto& a = p.coeffs();
  double tol = rel_tol * p.max_abs_coeff();
  int low = 0;
  while (std::abs(a[low]) <= tol) ++low;
  int high = p.degree();
  while (high > low && std::abs(a[high]) <= tol) --high;
  rc.order = low + high;
  bool self = true, anti = true;
  for (int j = 0; j <= rc.order; ++j) {
    cplx x = p.coeff(j), y = p.coeff(rc.order - j);
    if (std::abs(x - y) > tol) self = false;
    if (std::abs(x + y) > tol) anti = false;
  }
  rc.kind = self ? ReciprocalClass::SelfReciprocal : anti ? ReciprocalClass::AntiSelfReciprocal : ReciprocalClass::Neither;
  return rc;
}

ChebyshevCombo reduce_reciprocal(const ComplexPoly& p, int m, ReciprocalParity parity) {
  auto rc = reciprocal_class(p, 1e-9);
  auto want = parity == ReciprocalParity::Self ? ReciprocalClass::SelfReciprocal : ReciprocalClass::AntiSelfReciprocal;
  if (rc.kind != want || rc.order != 2 * m)
    throw Error(ErrorKind::ParityError, "polynomial is not of the stated reciprocal parity and order 2m");
  auto coeffs = reciprocal_reduce_coeffs<cplx>(p.coeffs(), m, parity);
  ChebyshevCombo q;
  auto kind = parity == ReciprocalParity::Self ? ChebKind::FirstKind : ChebKind::SecondKind;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
    if (coeffs[k] != cplx{}) q.terms.push_back({coeffs[k], kind, k});
  return q;
}

// ---------------------------------------------------------------------- roots

std::vector<cplx> poly_roots(const ComplexPoly& p) {
  std::vector<cplx> roots;
  if (p.degree() <= 0) return roots;
  auto a = p.coeffs();
  size_t low = 0;
  while (a[low] == cplx{}) ++low;
  for (size_t k = 0; k < low; ++k) roots.push_back(0.0);
  std::vector<cplx> c(a.begin() + low, a.end());
  int d = static_cast<int>(c.size()) - 1;
  if (d <= 0) return roots;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  ComplexPoly q(c), dq = q.derivative();
  for (int i = 0; i < d; ++i) {
    cplx z = es.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      cplx fd = dq(z);
      if (std::abs(fd) == 0) break;
      cplx step = q(z) / fd;
      if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-3 * (1 + std::abs(z))) break;
      z -= step;
    }
    roots.push_back(z);
  }
  return roots;
}

std::vector<Pole> cluster_roots(std::span<const cplx> roots, double tol) {
  std::vector<Pole> out;
  for (cplx r : roots) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Pole& q) { return std::abs(q.location - r) <= tol; });
    if (it == out.end())
      out.push_back({r, 1});
    else {
      it->location = (it->location * static_cast<double>(it->multiplicity) + r) / static_cast<double>(it->multiplicity + 1);
      ++it->multiplicity;
    }
  }
  return out;
}

}  // namespace zmc
