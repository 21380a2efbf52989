// Convergence radii of the majorant series: r(eta0), r_hat(eta0), R and R_hat.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "nbmaj/errors.hpp"
#include "nbmaj/majorants.hpp"
#include "nbmaj/numerics.hpp"

namespace nbmaj {

namespace {

using Digits50 = boost::multiprecision::cpp_bin_float_50;

template <typename Real>
Real radius_r_impl(Real eta, Real tol) {
  using std::sqrt;
  const Real b = sqrt(Real(2)) - 1;
  auto f = [&](const Real& s) -> Real {
    // (1 - u)^{-1/2} - 1 with u = 2s + s^2, written without cancellation near s = 0.
    const Real u = 2 * s + s * s;
    const Real w = (b - s) * (b + 2 + s);  // 1 - u
    if (!(w > 0)) return Real(0);
    const Real sw = sqrt(w);
    const Real d = u / (sw * (1 + sw));
    const Real inner = eta + 2 * (1 - eta) * d;
    if (!(inner > 0)) return Real(0);
    return 1 / sqrt(inner);
  };
  return numerics::tanh_sinh<Real>(f, Real(0), b, tol).value;
}

template <typename Real>
Real vplus_closed_form() {
  using std::pow;
  using std::sqrt;
  const Real s777 = sqrt(Real(777));
  const Real c = 251 + 9 * s777;
  const Real c13 = pow(c, Real(1) / 3);
  return -1 + sqrt(502 + 18 * s777 - 5 * c13 * c13 + 8 * c13) / (3 * c13);
}

template <typename Real>
Real p6(const Real& s) {
  return ((((((3 * s + 18) * s + 50) * s + 80) * s + 76) * s + 40) * s) - 8;
}

template <typename Real>
Real p4(const Real& s) {
  return (((s + 4) * s + 8) * s + 8) * s + 2;
}

template <typename Real>
Real flow_integrand(const Real& s) {
  using std::sqrt;
  const Real num = -p6(s);
  if (!(num > 0)) return Real(0);
  const Real q = s * s + 2 * s + 2;
  return 2 / (q * q) * sqrt(num / p4(s));
}

std::complex<long double> smallest_root(const std::vector<long double>& coeffs) {
  const auto roots = numerics::polynomial_roots<long double>(coeffs);
  return *std::min_element(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    return std::abs(a) < std::abs(b);
  });
}

template <typename Real>
FlowRadius radius_R_impl(Real tol) {
  FlowRadius out;
  const auto coeffs6 = vplus_polynomial();
  const std::vector<long double> c6(coeffs6.begin(), coeffs6.end());
  const auto z = smallest_root(c6);
  if (std::abs(z.imag()) > 1e-12L) {
    throw InternalConsistency("smallest root of the v+ polynomial is not real");
  }
  std::vector<Real> cr(c6.begin(), c6.end());
  const Real root = numerics::newton_polish<Real>(cr, Real(z.real()));
  const Digits50 closed = vplus_closed_form<Digits50>();
  out.vplus_root = static_cast<double>(root);
  out.vplus_closed_form = static_cast<double>(closed);
  out.vplus = out.vplus_root;
  const double diff = std::abs(out.vplus_closed_form - out.vplus_root);
  out.closed_form_agrees = diff <= 1e-12;
  if (diff > 1e-10) {
    throw InternalConsistency("closed form and polynomial root for v+ disagree");
  }
  const auto res = numerics::tanh_sinh<Real>(
      [](const Real& s) { return flow_integrand<Real>(s); }, Real(0), root, tol);
  out.R = static_cast<double>(res.value);
  out.quadrature_error = static_cast<double>(res.error_estimate);
  return out;
}

// Midpoint majorant written as tau = T(xi_hat) along the real branch through (0, 1).
long double midpoint_T(long double x) {
  const long double u = 2 - x * x;
  const long double z = (std::sqrt(1 - 4 * x * (1 - x) / std::pow(u, 1.5L)) - 1) / 2;
  const long double chi = (2 * z + z * z + 1 / std::sqrt(u)) / u;
  return 2 * (x - 1) * std::sqrt(2 - chi) / (1 + z);
}

long double midpoint_two_minus_chi(long double x) {
  const long double u = 2 - x * x;
  const long double z = (std::sqrt(1 - 4 * x * (1 - x) / std::pow(u, 1.5L)) - 1) / 2;
  return 2 - (2 * z + z * z + 1 / std::sqrt(u)) / u;
}

}  // namespace

std::vector<double> vplus_polynomial() { return {3, 18, 50, 80, 76, 40, -8}; }

std::vector<double> g_denominator_polynomial() { return {1, 4, 8, 8, 2}; }

std::complex<double> smallest_modulus_root(const std::vector<double>& coeffs) {
  const std::vector<long double> c(coeffs.begin(), coeffs.end());
  const auto z = smallest_root(c);
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

double flow_radius_integrand(double s) { return flow_integrand<double>(s); }

double radius_r(double eta0, double tol, Precision precision) {
  if (!(eta0 >= 0.0 && eta0 <= 1.0)) throw InvalidParameters("radius_r needs 0 <= eta0 <= 1");
  if (!(tol > 0.0)) throw InvalidParameters("radius_r needs a positive tolerance");
  switch (precision) {
    case Precision::Double: return radius_r_impl<double>(eta0, tol);
    case Precision::Extended:
      return static_cast<double>(radius_r_impl<long double>(eta0, tol));
    case Precision::Digits50:
      return static_cast<double>(radius_r_impl<Digits50>(Digits50(eta0), Digits50(tol)));
  }
  return 0.0;
}

double radius_r_hat_old(double eta0) {
  if (!(eta0 >= 0.0 && eta0 <= 1.0)) {
    throw InvalidParameters("radius_r_hat_old needs 0 <= eta0 <= 1");
  }
  using L = long double;
  const L eta = eta0;
  const L b = std::sqrt(2.0L) - 1;
  auto objective = [&](L s) -> L {
    const L w = (b - s) * (b + 2 + s);
    if (!(w > 0)) return eta == 1 ? s : 0;
    const L kappa = 2 * s * (1 + s) / std::pow(w, 1.5L);
    return 2 * s / (std::sqrt(eta) + std::sqrt(eta + kappa * (1 - eta)));
  };
  // Sample to confirm a single interior maximum, then refine on its bracket.
  constexpr int kSamples = 2000;
  std::vector<L> vals(kSamples + 1);
  for (int k = 0; k <= kSamples; ++k) vals[k] = objective(b * k / kSamples);
  const auto best = std::max_element(vals.begin(), vals.end()) - vals.begin();
  const L lo = b * std::max<long>(best - 1, 0) / kSamples;
  const L hi = b * std::min<long>(best + 1, kSamples) / kSamples;
  const auto ext = numerics::golden_section_max<L>(objective, lo, hi, L(1e-13));
  return static_cast<double>(std::max(ext.value, vals[best]));
}

FlowRadius radius_R(double tol, Precision precision) {
  if (!(tol > 0.0)) throw InvalidParameters("radius_R needs a positive tolerance");
  switch (precision) {
    case Precision::Double: return radius_R_impl<double>(tol);
    case Precision::Extended: return radius_R_impl<long double>(tol);
    case Precision::Digits50: return radius_R_impl<Digits50>(Digits50(tol));
  }
  return {};
}

MidpointRadius midpoint_radius_hat(double tol, int ratio_order) {
  using L = long double;
  MidpointRadius out;
  // The real branch ends where 2 - chi vanishes.
  const L hi_limit = std::sqrt(2.0L) - L(1e-9);
  if (!(midpoint_two_minus_chi(hi_limit) < 0)) {
    throw NumericFailure("midpoint radius: branch end not bracketed");
  }
  const L x_end = numerics::bisect<L>(midpoint_two_minus_chi, L(1), hi_limit, L(1e-18));
  const L h = 1e-7L;
  auto dT = [&](L x) { return (midpoint_T(x + h) - midpoint_T(x - h)) / (2 * h); };
  const L a = 1 + 10 * h;
  const L b = x_end - 10 * h;
  if (!(b > a) || !(dT(a) > 0) || !(dT(b) < 0)) {
    throw NumericFailure("midpoint radius: no fold found on the real branch");
  }
  const L x_fold = numerics::bisect<L>(dT, a, b, L(std::max(tol, 1e-15)));
  out.fold_argument = static_cast<double>(x_fold);
  out.fold = static_cast<double>(midpoint_T(x_fold));

  const auto [xi_hat, zeta_hat] = xi_zeta_recurrence(ratio_order, {}, 0.5);
  (void)zeta_hat;
  out.domb_sykes = series_radius_estimate(xi_hat);
  out.agree = std::abs(out.fold - out.domb_sykes) <= 1e-3 * out.fold;
  return out;
}

double conformal_sigma(double tau, double R) {
  if (!(R > 0.0)) throw InvalidParameters("conformal_sigma needs R > 0");
  // (e^x - 1) / (e^x + 1) = tanh(x / 2) with x = pi tau / (2R)
  return std::tanh(std::numbers::pi * tau / (4.0 * R));
}

double series_radius_estimate(const TruncatedSeries& f) {
  const int K = f.order();
  std::vector<double> xs;
  std::vector<double> ys;
  for (int k = std::max(1, K / 2); k < K; ++k) {
    if (f[k] == 0.0 || f[k + 1] == 0.0) continue;
    xs.push_back(1.0 / k);
    ys.push_back(f[k + 1] / f[k]);
  }
  if (xs.size() < 3) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  if (!(intercept > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / intercept;
}

}  // namespace nbmaj
