#include "nbmaj/tableau.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nbmaj/errors.hpp"

namespace nbmaj {

double RKTableau::norm_A_inf() const {
  double m = 0.0;
  for (int i = 0; i < stages; ++i) {
    double row = 0.0;
    for (int j = 0; j < stages; ++j) row += std::abs(a(i, j));
    m = std::max(m, row);
  }
  return m;
}

double RKTableau::norm_b_inf() const {
  double m = 0.0;
  for (double x : b) m = std::max(m, std::abs(x));
  return m;
}

double RKTableau::norm_b_one() const {
  double m = 0.0;
  for (double x : b) m += std::abs(x);
  return m;
}

namespace {

using L = long double;

// P_n(x) and P_n'(x) on [-1, 1] by the three-term recurrence.
void legendre(int n, L x, L& p, L& dp) {
  L p0 = 1;
  L p1 = x;
  if (n == 0) {
    p = 1;
    dp = 0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const L p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1);
}

}  // namespace

RKTableau gauss_tableau(int stages) {
  if (stages < 1 || stages > 8) {
    throw InvalidParameters("gauss_tableau supports 1..8 stages, got " + std::to_string(stages));
  }
  const int s = stages;
  std::vector<L> x(s), w(s);
  for (int i = 0; i < s; ++i) {
    L z = std::cos(std::numbers::pi_v<L> * (i + 0.75L) / (s + 0.5L));
    L p = 0, dp = 0;
    for (int it = 0; it < 100; ++it) {
      legendre(s, z, p, dp);
      const L dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-19L) break;
    }
    legendre(s, z, p, dp);
    // Map from [-1, 1] to [0, 1], ascending.
    x[s - 1 - i] = (1 + z) / 2;
    w[s - 1 - i] = 1 / ((1 - z * z) * dp * dp);
  }

  RKTableau tab;
  tab.stages = s;
  tab.order = 2 * s;
  tab.A.resize(static_cast<std::size_t>(s * s));
  tab.b.resize(s);
  tab.c.resize(s);
  for (int i = 0; i < s; ++i) {
    tab.b[i] = static_cast<double>(w[i]);
    tab.c[i] = static_cast<double>(x[i]);
  }
  // a_ij = int_0^{c_i} l_j, evaluated with the same Gauss rule (exact for degree s - 1).
  auto lagrange = [&](int j, L t) {
    L v = 1;
    for (int m = 0; m < s; ++m) {
      if (m != j) v *= (t - x[m]) / (x[j] - x[m]);
    }
    return v;
  };
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      L acc = 0;
      for (int m = 0; m < s; ++m) acc += w[m] * lagrange(j, x[i] * x[m]);
      tab.A[static_cast<std::size_t>(i * s + j)] = static_cast<double>(x[i] * acc);
    }
  }
  if (symplecticity_defect(tab) > 1e-14) {
    throw InternalConsistency("Gauss tableau fails the symplecticity condition");
  }
  return tab;
}

double symplecticity_defect(const RKTableau& tab) {
  double worst = 0.0;
  for (int i = 0; i < tab.stages; ++i) {
    for (int j = 0; j < tab.stages; ++j) {
      worst = std::max(worst, std::abs(tab.b[i] * tab.a(i, j) + tab.b[j] * tab.a(j, i) -
                                       tab.b[i] * tab.b[j]));
    }
  }
  return worst;
}

}  // namespace nbmaj
