#pragma once

// Complex polynomials, rational functions with explicit pole lists, and the
// Chebyshev reduction of (anti-)self-reciprocal polynomials.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "zmc/error.hpp"

namespace zmc {

using cplx = std::complex<double>;

class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<cplx> coeffs);  // constant term first
  ComplexPoly(std::initializer_list<cplx> coeffs) : ComplexPoly(std::vector<cplx>(coeffs)) {}

  static ComplexPoly constant(cplx c);
  static ComplexPoly monomial(cplx c, int degree);
  // lead * prod (z - r)
  static ComplexPoly from_roots(std::span<const cplx> roots, cplx lead = 1.0);

  const std::vector<cplx>& coeffs() const { return c_; }
  int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  cplx coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx{}; }
  cplx leading() const { return c_.empty() ? cplx{} : c_.back(); }
  double max_abs_coeff() const;

  cplx operator()(cplx z) const;
  // sum |c_k| |z|^k, the natural scale for rounding error at z
  double abs_sum(cplx z) const;

  ComplexPoly derivative() const;
  // first k Taylor coefficients about z0
  std::vector<cplx> taylor(cplx z0, int k) const;
  // quotient of division by (z - z0); remainder discarded
  ComplexPoly deflate(cplx z0) const;
  // drops leading coefficients with magnitude <= tol
  ComplexPoly trimmed(double tol) const;

  ComplexPoly operator+(const ComplexPoly& o) const;
  ComplexPoly operator-(const ComplexPoly& o) const;
  ComplexPoly operator*(const ComplexPoly& o) const;
  ComplexPoly operator*(cplx s) const;
  ComplexPoly operator-() const { return *this * cplx(-1.0); }

 private:
  void normalize();
  std::vector<cplx> c_;
};

struct Pole {
  cplx location;
  int multiplicity = 1;
};

double tol_root(const ComplexPoly& p);

// numerator / (lead * prod (z - pole)^mult). Common roots of numerator and
// denominator are cancelled on construction.
class RationalFn {
 public:
  RationalFn() : RationalFn(ComplexPoly::constant(0.0), {}, 1.0) {}
  RationalFn(ComplexPoly numerator, std::vector<Pole> poles, cplx den_lead = 1.0);
  static RationalFn polynomial(ComplexPoly p) { return RationalFn(std::move(p), {}, 1.0); }

  const ComplexPoly& numerator() const { return num_; }
  const ComplexPoly& denominator() const { return den_; }
  const std::vector<Pole>& poles() const { return poles_; }
  cplx den_lead() const { return lead_; }
  int total_pole_order() const;

  cplx operator()(cplx z) const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator*(cplx s) const;
  RationalFn derivative() const;

  // index of the pole within tol_root of z, or -1
  int find_pole(cplx z) const;
  // denominator roots removed by cancellation
  const std::vector<cplx>& removable_points() const { return removed_; }

 private:
  ComplexPoly num_;
  ComplexPoly den_;
  std::vector<Pole> poles_;
  std::vector<cplx> removed_;
  cplx lead_;
};

enum class ChebKind { FirstKind, SecondKind };

struct ChebTerm {
  cplx coefficient;
  ChebKind kind;
  int index;
};

struct ChebyshevCombo {
  std::vector<ChebTerm> terms;
  cplx operator()(double u) const;
  std::string to_string() const;  // e.g. "2*T2 + 0.5*T0"
};

double cheb_T(int n, double u);
double cheb_U(int n, double u);

cplx residue(const RationalFn& f, cplx pole);

struct PrincipalPart {
  cplx pole;
  int order;
  std::vector<cplx> coeffs;  // coeffs[i] multiplies (z - pole)^-(i+1)
};
std::vector<PrincipalPart> partial_fractions(const RationalFn& f);
cplx eval_principal_parts(std::span<const PrincipalPart> parts, cplx z);

enum class ReciprocalParity { Self, Anti };

struct ReciprocalClass {
  enum Kind { SelfReciprocal, AntiSelfReciprocal, Neither } kind = Neither;
  int order = 0;  // reciprocal order: lowest power + degree
};

ReciprocalClass reciprocal_class(const ComplexPoly& p, double rel_tol = 1e-12);

// Coefficients of the reduced polynomial by Chebyshev index, given the power
// coefficients a_0..a_{2m} of a reciprocal polynomial of order 2m.
// Self: q = sum_k out[k] T_k.  Anti: q = sum_k out[k] U_k.
// Works for any coefficient type with +, - and a zero default.
template <class T>
std::vector<T> reciprocal_reduce_coeffs(std::span<const T> a, int m, ReciprocalParity parity) {
  auto at = [&](int j) { return (j >= 0 && j < static_cast<int>(a.size())) ? a[j] : T{}; };
  std::vector<T> out;
  if (parity == ReciprocalParity::Self) {
    out.resize(m + 1);
    out[0] = at(m);
    for (int k = 1; k <= m; ++k) out[k] = at(m + k) + at(m - k);
  } else {
    out.resize(m > 0 ? m : 0);
    for (int k = 1; k <= m; ++k) out[k - 1] = at(m + k) - at(m - k);
  }
  return out;
}

ChebyshevCombo reduce_reciprocal(const ComplexPoly& p, int m, ReciprocalParity parity);

// roots by companion-matrix eigenvalues, polished by Newton steps
std::vector<cplx> poly_roots(const ComplexPoly& p);

// groups values within tol into (representative, count)
std::vector<Pole> cluster_roots(std::span<const cplx> roots, double tol);

}  // namespace zmc
