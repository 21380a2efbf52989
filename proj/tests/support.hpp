#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "nbmaj/series.hpp"

namespace nbmaj::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed1234);
  return gen;
}

inline double uniform(double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng());
}

inline int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng()); }

// Nonnegative majorant with coefficients in [0, hi].
inline TruncatedSeries random_majorant(int order, double hi = 1.0) {
  TruncatedSeries f(order);
  for (int k = 0; k <= order; ++k) f[k] = uniform(0.0, hi);
  return f;
}

// Vector series with |f_k| <= fbar_k, spread over the full ball.
inline VectorSeries random_dominated(const TruncatedSeries& fbar, int dim) {
  VectorSeries f(dim, fbar.order());
  for (int k = 0; k <= fbar.order(); ++k) {
    std::vector<double> x(static_cast<std::size_t>(dim));
    double n2 = 0.0;
    for (double& c : x) {
      c = uniform(-1.0, 1.0);
      n2 += c * c;
    }
    const double r = fbar[k] * uniform(0.0, 1.0) / std::sqrt(n2 > 0 ? n2 : 1.0);
    for (int c = 0; c < dim; ++c) f[k][c] = r * x[static_cast<std::size_t>(c)];
  }
  return f;
}

inline double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
  double d = 0.0;
  for (int k = 0; k <= a.order(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

inline double max_rel_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
  double d = 0.0;
  for (int k = 0; k <= a.order(); ++k) {
    d = std::max(d, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
  }
  return d;
}

}  // namespace nbmaj::testing
