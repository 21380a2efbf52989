#pragma once

// Scalar numerical kernels shared by the radius computations: double
// exponential quadrature, polynomial roots, 1-D maximization and bracketing.
// Everything is templated on the real type so the radii can be evaluated in
// long double or a multiprecision type.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "nbmaj/errors.hpp"

namespace nbmaj::numerics {

template <typename Real>
struct QuadratureResult {
  Real value;
  Real error_estimate;
  int levels;
  int evaluations;
};

// Tanh-sinh quadrature of f over (a, b). f may blow up integrably at either
// endpoint; abscissas near an endpoint are formed from the endpoint distance so
// that no precision is lost there. Throws NumericFailure when the level
// differences do not fall below tol (absolute) within max_levels halvings.
template <typename Real, typename F>
QuadratureResult<Real> tanh_sinh(F&& f, Real a, Real b, Real tol, int max_levels = 12) {
  using std::cosh;
  using std::exp;
  using std::sinh;
  using std::abs;
  using std::atan;
  const Real pi = Real(4) * atan(Real(1));
  const Real width = b - a;
  // Abscissas closer than this to an endpoint are skipped (weights underflow).
  const Real t_max = Real(6);

  int evaluations = 0;
  auto term = [&](const Real& t) -> Real {
    const Real u = pi / 2 * sinh(t);
    const Real e = exp(-2 * abs(u));
    // distance to the nearer endpoint: width / (1 + e^{2|u|})
    const Real dist = width * e / (1 + e);
    if (!(dist > Real(0))) return Real(0);
    const Real x = t < 0 ? a + dist : b - dist;
    const Real ch = cosh(u);
    const Real w = width / 2 * (pi / 2) * cosh(t) / (ch * ch);
    ++evaluations;
    const Real fx = f(x);
    return w * fx;
  };

  Real h = 1;
  Real sum = term(Real(0));
  for (int k = 1; Real(k) * h <= t_max; ++k) sum += term(k * h) + term(-k * h);
  Real estimate = sum * h;
  Real err = std::numeric_limits<Real>::max();
  for (int level = 1; level <= max_levels; ++level) {
    h /= 2;
    Real added = 0;
    for (int k = 1; Real(k) * h <= t_max; k += 2) added += term(k * h) + term(-k * h);
    sum += added;
    const Real next = sum * h;
    err = abs(next - estimate);
    estimate = next;
    if (level >= 3 && err <= tol) return {estimate, err, level, evaluations};
  }
  throw NumericFailure("tanh-sinh quadrature did not converge", static_cast<double>(err));
}

// Golden-section search for the maximum of a unimodal f on [a, b].
template <typename Real>
struct Extremum {
  Real argument;
  Real value;
};

template <typename Real, typename F>
Extremum<Real> golden_section_max(F&& f, Real a, Real b, Real xtol) {
  using std::sqrt;
  const Real inv_phi = (sqrt(Real(5)) - 1) / 2;
  Real x1 = b - inv_phi * (b - a);
  Real x2 = a + inv_phi * (b - a);
  Real f1 = f(x1);
  Real f2 = f(x2);
  for (int it = 0; it < 500 && (b - a) > xtol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  const Real xm = (a + b) / 2;
  return {xm, f(xm)};
}

// Bisection for a sign change of f on [a, b].
template <typename Real, typename F>
Real bisect(F&& f, Real a, Real b, Real xtol, int max_iter = 400) {
  Real fa = f(a);
  const Real fb = f(b);
  if ((fa > 0) == (fb > 0)) throw NumericFailure("bisect: no sign change on the bracket");
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    const Real m = (a + b) / 2;
    const Real fm = f(m);
    if (fm == 0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return (a + b) / 2;
}

// Evaluate a polynomial with coefficients ordered from the highest degree down.
template <typename T, typename Real>
T polyval(std::span<const Real> coeffs, const T& x) {
  T acc = T(0);
  for (const Real& c : coeffs) acc = acc * x + T(c);
  return acc;
}

// All complex roots of a polynomial (highest degree first) by the
// Aberth-Ehrlich simultaneous iteration.
template <typename Real>
std::vector<std::complex<Real>> polynomial_roots(std::span<const Real> coeffs,
                                                 Real tol = Real(1e-18), int max_iter = 500) {
  using std::abs;
  using std::atan;
  using C = std::complex<Real>;
  if (coeffs.size() < 2 || coeffs.front() == Real(0)) {
    throw InvalidParameters("polynomial_roots: need degree >= 1 and a nonzero leading term");
  }
  const std::size_t n = coeffs.size() - 1;
  std::vector<Real> deriv(n);
  for (std::size_t i = 0; i < n; ++i) deriv[i] = coeffs[i] * Real(n - i);

  // Cauchy bound on the root moduli.
  Real bound = 0;
  for (std::size_t i = 1; i <= n; ++i) bound = std::max(bound, abs(coeffs[i] / coeffs[0]));
  bound += 1;

  const Real pi = Real(4) * atan(Real(1));
  std::vector<C> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Real angle = 2 * pi * Real(k) / Real(n) + Real(0.4);
    z[k] = std::polar(bound / 2, angle);
  }
  for (int it = 0; it < max_iter; ++it) {
    Real max_step = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const C p = polyval<C, Real>(coeffs, z[k]);
      const C dp = polyval<C, Real>(std::span<const Real>(deriv), z[k]);
      if (p == C(0)) continue;
      const C ratio = p / dp;
      C repulsion = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) repulsion += C(1) / (z[k] - z[j]);
      }
      const C step = ratio / (C(1) - ratio * repulsion);
      z[k] -= step;
      max_step = std::max(max_step, abs(step) / std::max(Real(1), abs(z[k])));
    }
    if (max_step < tol) return z;
  }
  return z;
}

// Newton polish of a real root of a polynomial (highest degree first).
template <typename Real>
Real newton_polish(std::span<const Real> coeffs, Real x, int iterations = 8) {
  const std::size_t n = coeffs.size() - 1;
  std::vector<Real> deriv(n);
  for (std::size_t i = 0; i < n; ++i) deriv[i] = coeffs[i] * Real(n - i);
  for (int it = 0; it < iterations; ++it) {
    const Real p = polyval<Real, Real>(coeffs, x);
    const Real dp = polyval<Real, Real>(std::span<const Real>(deriv), x);
    if (dp == Real(0)) break;
    x -= p / dp;
  }
  return x;
}

}  // namespace nbmaj::numerics
