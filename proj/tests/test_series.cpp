#include <doctest.h>

#include <cmath>

#include "nbmaj/errors.hpp"
#include "nbmaj/series.hpp"
#include "support.hpp"

using namespace nbmaj;
using namespace nbmaj::testing;

TEST_CASE("series_mul examples") {
  const TruncatedSeries a{1, 1, 0};
  CHECK(series_mul(a, a) == TruncatedSeries{1, 2, 1});

  const TruncatedSeries f{0.3, -1.5, 2.25, 7.0};
  CHECK(series_mul(f, TruncatedSeries::constant(1.0, 3)) == f);

  const VectorSeries v = VectorSeries::from_coefficients({{1, 0}, {0, 1}, {0, 0}});
  const VectorSeries p = series_mul(v, TruncatedSeries{0, 2, 0});
  CHECK(p == VectorSeries::from_coefficients({{0, 0}, {2, 0}, {0, 2}}));

  CHECK_THROWS_AS(series_mul(TruncatedSeries(2), TruncatedSeries(3)), OrderMismatch);
}

TEST_CASE("series_pow examples") {
  const TruncatedSeries f{1, 1, 0, 0, 0};
  CHECK(max_abs_diff(series_pow(f, 2.0), TruncatedSeries{1, 2, 1, 0, 0}) < 1e-15);
  CHECK(max_abs_diff(series_pow(f, -1.0), TruncatedSeries{1, -1, 1, -1, 1}) < 1e-15);
  // Generalized binomial coefficients of (1 + t)^{-3/2}.
  const TruncatedSeries p = series_pow(f, -1.5);
  CHECK(p[1] == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(p[2] == doctest::Approx(15.0 / 8.0).epsilon(1e-15));
  CHECK(p[3] == doctest::Approx(-35.0 / 16.0).epsilon(1e-15));

  CHECK_THROWS_AS(series_pow(TruncatedSeries{2, 1}, 0.5), NormalizationError);
  const TruncatedSeries g = series_pow_scaled(TruncatedSeries{4, 4, 0}, 0.5);
  CHECK(max_abs_diff(g, TruncatedSeries{2, 1, -0.25}) < 1e-15);
}

TEST_CASE("derivative and antiderivative") {
  CHECK(derivative(TruncatedSeries{1, 1, 1}) == TruncatedSeries{1, 2, 0});
  CHECK(antiderivative(TruncatedSeries{1, 0, 0}) == TruncatedSeries{0, 1, 0});
  for (int trial = 0; trial < 20; ++trial) {
    TruncatedSeries f = random_majorant(8);
    f[0] = 0.0;
    CHECK(max_abs_diff(antiderivative(derivative(f)), f) < 1e-14);
  }
  CHECK(shift_up(TruncatedSeries{1, 2, 3}) == TruncatedSeries{0, 1, 2});
  CHECK(two_minus(TruncatedSeries{1, 2, 3}) == TruncatedSeries{1, -2, -3});
}

TEST_CASE("dominates examples") {
  CHECK(dominates(TruncatedSeries{1, 1}, TruncatedSeries{1, 1}));
  CHECK_FALSE(dominates(TruncatedSeries{1, 2}, TruncatedSeries{1, 1}));
  CHECK(dominates(VectorSeries::from_coefficients({{0, 0}, {3, 4}}), TruncatedSeries{0, 5}));
  const DominanceReport r = check_dominance(TruncatedSeries{1, 1, 3}, TruncatedSeries{1, 1, 2});
  CHECK_FALSE(r.holds);
  CHECK(r.first_violation == 2);
  CHECK(r.worst_excess == doctest::Approx(1.0));
}

TEST_CASE("vec_norm_sq_series examples") {
  const VectorSeries f = VectorSeries::from_coefficients({{1, 0}, {0, 1}, {0, 0}});
  CHECK(vec_norm_sq_series(f) == TruncatedSeries{1, 0, 1});
  const VectorSeries u = VectorSeries::from_coefficients({{0.6, 0.8}, {0, 0}});
  CHECK(vec_norm_sq_series(u)[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(vec_norm_sq_series(u)[1] == 0.0);

  // Brute-force expansion of <f(t), g(t)> as a product of polynomials.
  for (int trial = 0; trial < 20; ++trial) {
    const int K = 4;
    VectorSeries a(3, K), b(3, K);
    for (int k = 0; k <= K; ++k) {
      for (int c = 0; c < 3; ++c) {
        a[k][c] = uniform(-1, 1);
        b[k][c] = uniform(-1, 1);
      }
    }
    const TruncatedSeries d = vec_norm_sq_series(a, b);
    for (int k = 0; k <= K; ++k) {
      double sum = 0.0;
      for (int i = 0; i <= K; ++i) {
        for (int j = 0; j <= K; ++j) {
          if (i + j != k) continue;
          for (int c = 0; c < 3; ++c) sum += a[i][c] * b[j][c];
        }
      }
      CHECK(d[k] == doctest::Approx(sum).epsilon(1e-14));
    }
  }
}

TEST_CASE("majorant calculus rules hold on random dominated series") {
  for (int trial = 0; trial < 200; ++trial) {
    const int K = uniform_int(0, 12);
    const int dim = uniform_int(1, 4);
    const TruncatedSeries fb = random_majorant(K);
    const TruncatedSeries gb = random_majorant(K);
    const TruncatedSeries hb = random_majorant(K);
    const VectorSeries f = random_dominated(fb, dim);
    const VectorSeries g = random_dominated(gb, dim);
    TruncatedSeries h(K);
    for (int k = 0; k <= K; ++k) h[k] = hb[k] * uniform(-1, 1);

    CHECK(dominates(f + g, fb + gb));
    CHECK(dominates(series_mul(f, h), series_mul(fb, hb)));
    CHECK(dominates(vec_norm_sq_series(f, g), series_mul(fb, gb)));
    CHECK(dominates(derivative(f), derivative(fb)));
    CHECK(dominates(antiderivative(f), antiderivative(fb)));
  }
}

TEST_CASE("series_pow inverse and integer powers") {
  for (int trial = 0; trial < 100; ++trial) {
    const int K = uniform_int(1, 15);
    TruncatedSeries f(K);
    f[0] = 1.0;
    for (int k = 1; k <= K; ++k) f[k] = uniform(-0.5, 0.5);
    const double nu = uniform(-3, 3);
    const TruncatedSeries one = series_mul(series_pow(f, nu), series_pow(f, -nu));
    CHECK(max_abs_diff(one, TruncatedSeries::constant(1.0, K)) < 1e-12);

    const int m = uniform_int(1, 5);
    TruncatedSeries rep = TruncatedSeries::constant(1.0, K);
    for (int j = 0; j < m; ++j) rep = series_mul(rep, f);
    CHECK(max_abs_diff(series_pow(f, m), rep) < 1e-12);
  }
}

TEST_CASE("powers of dominated series are dominated by powers of 2 - fbar") {
  for (int trial = 0; trial < 200; ++trial) {
    const int K = uniform_int(1, 12);
    TruncatedSeries fb = random_majorant(K, 0.1);
    fb[0] = 1.0;
    TruncatedSeries f(K);
    f[0] = 1.0;
    for (int k = 1; k <= K; ++k) f[k] = fb[k] * uniform(-1, 1);
    for (double nu : {-0.5, -1.0, -1.5}) {
      CHECK(dominates(series_pow(f, nu), series_pow(two_minus(fb), nu)));
    }
  }
}

TEST_CASE("json round trip") {
  const TruncatedSeries f{1, 0.1, 1e-300, 3};
  nlohmann::json j = f;
  CHECK(j.get<TruncatedSeries>() == f);
  const VectorSeries v = VectorSeries::from_coefficients({{1, 2}, {3, 4}});
  nlohmann::json jv = v;
  CHECK(jv.get<VectorSeries>() == v);
}
