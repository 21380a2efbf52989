#include "nbmaj/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbmaj/errors.hpp"

namespace nbmaj {

namespace {

void require_same_order(int a, int b, const char* op) {
  if (a != b) {
    throw OrderMismatch(std::string(op) + ": truncation orders differ (" + std::to_string(a) +
                        " vs " + std::to_string(b) + ")");
  }
}

void require_valid_order(int order) {
  if (order < 0) throw InvalidParameters("series order must be >= 0");
}

}  // namespace

TruncatedSeries::TruncatedSeries(int order) {
  require_valid_order(order);
  c_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

TruncatedSeries::TruncatedSeries(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw InvalidParameters("series needs at least one coefficient");
}

TruncatedSeries TruncatedSeries::constant(double c, int order) {
  TruncatedSeries s(order);
  s[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::identity(int order) {
  TruncatedSeries s(order);
  if (order >= 1) s[1] = 1.0;
  return s;
}

double TruncatedSeries::evaluate(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

TruncatedSeries TruncatedSeries::resized(int order) const {
  require_valid_order(order);
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  std::copy_n(c_.begin(), std::min(c.size(), c_.size()), c.begin());
  return TruncatedSeries(std::move(c));
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  require_same_order(order(), o.order(), "series add");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  require_same_order(order(), o.order(), "series sub");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator-(TruncatedSeries a) { return a *= -1.0; }
TruncatedSeries operator*(TruncatedSeries a, double s) { return a *= s; }
TruncatedSeries operator*(double s, TruncatedSeries a) { return a *= s; }

TruncatedSeries operator+(TruncatedSeries a, double c) {
  a[0] += c;
  return a;
}

TruncatedSeries operator+(double c, TruncatedSeries a) { return std::move(a) + c; }

TruncatedSeries operator-(double c, const TruncatedSeries& a) { return -a + c; }

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a.order(), b.order(), "series_mul");
  const int K = a.order();
  TruncatedSeries r(K);
  for (int l = 0; l <= K; ++l) {
    double acc = 0.0;
    for (int k = 0; k <= l; ++k) acc += b[k] * a[l - k];
    r[l] = acc;
  }
  return r;
}

TruncatedSeries series_pow(const TruncatedSeries& f, double nu) {
  if (f[0] != 1.0) {
    throw NormalizationError("series_pow: constant term must be exactly 1 (got " +
                             std::to_string(f[0]) + ")");
  }
  const int K = f.order();
  TruncatedSeries p(K);
  p[0] = 1.0;
  for (int k = 1; k <= K; ++k) {
    double acc = 0.0;
    for (int j = 0; j < k; ++j) acc += ((k - j) * nu - j) * f[k - j] * p[j];
    p[k] = acc / k;
  }
  return p;
}

TruncatedSeries series_pow_scaled(const TruncatedSeries& f, double nu) {
  const double f0 = f[0];
  if (!(f0 > 0.0)) {
    throw NormalizationError("series_pow_scaled: constant term must be positive");
  }
  TruncatedSeries g = f * (1.0 / f0);
  g[0] = 1.0;
  return series_pow(g, nu) * std::pow(f0, nu);
}

TruncatedSeries derivative(const TruncatedSeries& f) {
  const int K = f.order();
  TruncatedSeries d(K);
  for (int k = 0; k < K; ++k) d[k] = (k + 1) * f[k + 1];
  return d;
}

TruncatedSeries antiderivative(const TruncatedSeries& f) {
  const int K = f.order();
  TruncatedSeries r(K);
  for (int k = 1; k <= K; ++k) r[k] = f[k - 1] / k;
  return r;
}

TruncatedSeries shift_up(const TruncatedSeries& f) {
  const int K = f.order();
  TruncatedSeries r(K);
  for (int k = 1; k <= K; ++k) r[k] = f[k - 1];
  return r;
}

TruncatedSeries two_minus(const TruncatedSeries& f) { return 2.0 - f; }

// ---------------------------------------------------------------------------
// VectorSeries

VectorSeries::VectorSeries(int dim, int order) : dim_(dim), order_(order) {
  require_valid_order(order);
  if (dim < 1) throw InvalidParameters("vector series dimension must be >= 1");
  data_.assign(static_cast<std::size_t>(dim) * (order + 1), 0.0);
}

VectorSeries VectorSeries::constant(std::span<const double> c, int order) {
  VectorSeries s(static_cast<int>(c.size()), order);
  std::copy(c.begin(), c.end(), s[0].begin());
  return s;
}

VectorSeries VectorSeries::from_coefficients(const std::vector<std::vector<double>>& coeffs) {
  if (coeffs.empty()) throw InvalidParameters("vector series needs at least one coefficient");
  const int dim = static_cast<int>(coeffs.front().size());
  VectorSeries s(dim, static_cast<int>(coeffs.size()) - 1);
  for (int k = 0; k <= s.order(); ++k) {
    if (static_cast<int>(coeffs[k].size()) != dim) {
      throw DimensionMismatch("vector series coefficients must share one dimension");
    }
    std::copy(coeffs[k].begin(), coeffs[k].end(), s[k].begin());
  }
  return s;
}

std::span<double> VectorSeries::operator[](int k) {
  return {data_.data() + static_cast<std::size_t>(k) * dim_, static_cast<std::size_t>(dim_)};
}

std::span<const double> VectorSeries::operator[](int k) const {
  return {data_.data() + static_cast<std::size_t>(k) * dim_, static_cast<std::size_t>(dim_)};
}

TruncatedSeries VectorSeries::component(int c) const {
  TruncatedSeries s(order_);
  for (int k = 0; k <= order_; ++k) s[k] = (*this)[k][c];
  return s;
}

std::vector<double> VectorSeries::evaluate(double t) const {
  std::vector<double> out(static_cast<std::size_t>(dim_), 0.0);
  for (int k = order_; k >= 0; --k) {
    auto ck = (*this)[k];
    for (int c = 0; c < dim_; ++c) out[c] = out[c] * t + ck[c];
  }
  return out;
}

VectorSeries& VectorSeries::operator+=(const VectorSeries& o) {
  require_same_order(order_, o.order_, "vector series add");
  if (dim_ != o.dim_) throw DimensionMismatch("vector series add: dimensions differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

VectorSeries& VectorSeries::operator-=(const VectorSeries& o) {
  require_same_order(order_, o.order_, "vector series sub");
  if (dim_ != o.dim_) throw DimensionMismatch("vector series sub: dimensions differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

VectorSeries& VectorSeries::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

VectorSeries operator+(VectorSeries a, const VectorSeries& b) { return a += b; }
VectorSeries operator-(VectorSeries a, const VectorSeries& b) { return a -= b; }
VectorSeries operator*(VectorSeries a, double s) { return a *= s; }
VectorSeries operator*(double s, VectorSeries a) { return a *= s; }

VectorSeries series_mul(const VectorSeries& a, const TruncatedSeries& b) {
  require_same_order(a.order(), b.order(), "series_mul");
  const int K = a.order();
  const int d = a.dim();
  VectorSeries r(d, K);
  for (int l = 0; l <= K; ++l) {
    auto rl = r[l];
    for (int k = 0; k <= l; ++k) {
      const double bk = b[k];
      if (bk == 0.0) continue;
      auto al = a[l - k];
      for (int c = 0; c < d; ++c) rl[c] += bk * al[c];
    }
  }
  return r;
}

VectorSeries derivative(const VectorSeries& f) {
  VectorSeries d(f.dim(), f.order());
  for (int k = 0; k < f.order(); ++k) {
    auto src = f[k + 1];
    auto dst = d[k];
    for (int c = 0; c < f.dim(); ++c) dst[c] = (k + 1) * src[c];
  }
  return d;
}

VectorSeries antiderivative(const VectorSeries& f) {
  VectorSeries r(f.dim(), f.order());
  for (int k = 1; k <= f.order(); ++k) {
    auto src = f[k - 1];
    auto dst = r[k];
    for (int c = 0; c < f.dim(); ++c) dst[c] = src[c] / k;
  }
  return r;
}

VectorSeries shift_up(const VectorSeries& f) {
  VectorSeries r(f.dim(), f.order());
  for (int k = 1; k <= f.order(); ++k) {
    auto src = f[k - 1];
    std::copy(src.begin(), src.end(), r[k].begin());
  }
  return r;
}

TruncatedSeries vec_norm_sq_series(const VectorSeries& f, const VectorSeries& g) {
  require_same_order(f.order(), g.order(), "vec_norm_sq_series");
  if (f.dim() != g.dim()) throw DimensionMismatch("vec_norm_sq_series: dimensions differ");
  const int K = f.order();
  TruncatedSeries r(K);
  for (int l = 0; l <= K; ++l) {
    double acc = 0.0;
    for (int k = 0; k <= l; ++k) {
      auto fk = f[k];
      auto gl = g[l - k];
      for (int c = 0; c < f.dim(); ++c) acc += fk[c] * gl[c];
    }
    r[l] = acc;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Majorant order

namespace {

template <typename NormAt>
DominanceReport dominance_impl(int order, const TruncatedSeries& fbar, DominanceSlack slack,
                               NormAt norm_at) {
  require_same_order(order, fbar.order(), "dominates");
  DominanceReport rep;
  rep.slack = slack.relative;
  rep.worst_excess = -INFINITY;
  for (int k = 0; k <= order; ++k) {
    const double nk = norm_at(k);
    const double excess = nk - fbar[k];
    rep.worst_excess = std::max(rep.worst_excess, excess);
    const double tol = slack.relative * std::max(1.0, std::abs(fbar[k]));
    if (!(excess <= tol) && rep.holds) {
      rep.holds = false;
      rep.first_violation = k;
    }
  }
  return rep;
}

}  // namespace

DominanceReport check_dominance(const TruncatedSeries& f, const TruncatedSeries& fbar,
                                DominanceSlack slack) {
  return dominance_impl(f.order(), fbar, slack, [&](int k) { return std::abs(f[k]); });
}

DominanceReport check_dominance(const VectorSeries& f, const TruncatedSeries& fbar,
                                DominanceSlack slack) {
  return dominance_impl(f.order(), fbar, slack, [&](int k) {
    double s = 0.0;
    for (double x : f[k]) s += x * x;
    return std::sqrt(s);
  });
}

bool dominates(const TruncatedSeries& f, const TruncatedSeries& fbar, DominanceSlack slack) {
  return check_dominance(f, fbar, slack).holds;
}

bool dominates(const VectorSeries& f, const TruncatedSeries& fbar, DominanceSlack slack) {
  return check_dominance(f, fbar, slack).holds;
}

bool all_nonnegative(const TruncatedSeries& f) {
  return std::all_of(f.coeffs().begin(), f.coeffs().end(), [](double x) { return x >= 0.0; });
}

void to_json(nlohmann::json& j, const TruncatedSeries& s) {
  j = std::vector<double>(s.coeffs().begin(), s.coeffs().end());
}

void from_json(const nlohmann::json& j, TruncatedSeries& s) {
  s = TruncatedSeries(j.get<std::vector<double>>());
}

void to_json(nlohmann::json& j, const VectorSeries& s) {
  j = nlohmann::json::array();
  for (int k = 0; k <= s.order(); ++k) j.push_back(std::vector<double>(s[k].begin(), s[k].end()));
}

void from_json(const nlohmann::json& j, VectorSeries& s) {
  s = VectorSeries::from_coefficients(j.get<std::vector<std::vector<double>>>());
}

}  // namespace nbmaj
