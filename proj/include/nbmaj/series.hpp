#pragma once

// Truncated formal power series and the coefficientwise majorant order.
//
// A TruncatedSeries of order K stores c_0..c_K. All binary operations require
// equal orders and truncate their result at K. A VectorSeries stores
// d-dimensional coefficients f_0..f_K in a flat row-major buffer.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <json.hpp>

namespace nbmaj {

inline constexpr int kDefaultOrder = 60;

class TruncatedSeries {
 public:
  TruncatedSeries() : TruncatedSeries(0) {}
  explicit TruncatedSeries(int order);
  explicit TruncatedSeries(std::vector<double> coeffs);
  TruncatedSeries(std::initializer_list<double> coeffs)
      : TruncatedSeries(std::vector<double>(coeffs)) {}

  static TruncatedSeries constant(double c, int order);
  // The series t.
  static TruncatedSeries identity(int order);

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  std::span<const double> coeffs() const noexcept { return c_; }

  // Horner evaluation of the truncated polynomial.
  double evaluate(double t) const;
  // Same series re-truncated (or zero-padded) at a new order.
  TruncatedSeries resized(int order) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(double s);

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<double> c_;
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a);
TruncatedSeries operator*(TruncatedSeries a, double s);
TruncatedSeries operator*(double s, TruncatedSeries a);
TruncatedSeries operator+(TruncatedSeries a, double c);
TruncatedSeries operator+(double c, TruncatedSeries a);
TruncatedSeries operator-(double c, const TruncatedSeries& a);

// Cauchy product truncated at the common order.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series_mul(a, b);
}

// f^nu through p_k = (1/k) sum_{j<k} ((k-j) nu - j) f_{k-j} p_j; needs f_0 == 1.
TruncatedSeries series_pow(const TruncatedSeries& f, double nu);
// f^nu for any f_0 > 0, via f_0^nu (f/f_0)^nu.
TruncatedSeries series_pow_scaled(const TruncatedSeries& f, double nu);

// The order is kept: the derivative is padded with a trailing zero.
TruncatedSeries derivative(const TruncatedSeries& f);
TruncatedSeries antiderivative(const TruncatedSeries& f);
// Multiplication by t (drops the top coefficient).
TruncatedSeries shift_up(const TruncatedSeries& f);

// 2 - f, with the constant term 2 - f_0.
TruncatedSeries two_minus(const TruncatedSeries& f);

class VectorSeries {
 public:
  VectorSeries() : VectorSeries(1, 0) {}
  VectorSeries(int dim, int order);
  // Constant series with value c.
  static VectorSeries constant(std::span<const double> c, int order);
  static VectorSeries from_coefficients(const std::vector<std::vector<double>>& coeffs);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::span<double> operator[](int k);
  std::span<const double> operator[](int k) const;
  // Scalar series of component c.
  TruncatedSeries component(int c) const;
  std::vector<double> evaluate(double t) const;

  VectorSeries& operator+=(const VectorSeries& o);
  VectorSeries& operator-=(const VectorSeries& o);
  VectorSeries& operator*=(double s);

  friend bool operator==(const VectorSeries&, const VectorSeries&) = default;

 private:
  int dim_;
  int order_;
  std::vector<double> data_;
};

VectorSeries operator+(VectorSeries a, const VectorSeries& b);
VectorSeries operator-(VectorSeries a, const VectorSeries& b);
VectorSeries operator*(VectorSeries a, double s);
VectorSeries operator*(double s, VectorSeries a);

VectorSeries series_mul(const VectorSeries& a, const TruncatedSeries& b);
inline VectorSeries operator*(const VectorSeries& a, const TruncatedSeries& b) {
  return series_mul(a, b);
}
inline VectorSeries operator*(const TruncatedSeries& b, const VectorSeries& a) {
  return series_mul(a, b);
}

VectorSeries derivative(const VectorSeries& f);
VectorSeries antiderivative(const VectorSeries& f);
VectorSeries shift_up(const VectorSeries& f);

// Series of <f, g>; with g = f this is the series of |f|^2.
TruncatedSeries vec_norm_sq_series(const VectorSeries& f, const VectorSeries& g);
inline TruncatedSeries vec_norm_sq_series(const VectorSeries& f) {
  return vec_norm_sq_series(f, f);
}

// Comparison slack for f ⊴ fbar: coefficient k may exceed fbar_k by
// relative * max(1, fbar_k).
struct DominanceSlack {
  double relative = 1e-12;
};

struct DominanceReport {
  bool holds = true;
  int first_violation = -1;   // degree of the first violated coefficient
  double worst_excess = 0.0;  // max_k (|f_k| - fbar_k), may be negative
  double slack = 1e-12;
};

DominanceReport check_dominance(const TruncatedSeries& f, const TruncatedSeries& fbar,
                                DominanceSlack slack = {});
DominanceReport check_dominance(const VectorSeries& f, const TruncatedSeries& fbar,
                                DominanceSlack slack = {});
bool dominates(const TruncatedSeries& f, const TruncatedSeries& fbar, DominanceSlack slack = {});
bool dominates(const VectorSeries& f, const TruncatedSeries& fbar, DominanceSlack slack = {});

bool all_nonnegative(const TruncatedSeries& f);

void to_json(nlohmann::json& j, const TruncatedSeries& s);
void from_json(const nlohmann::json& j, TruncatedSeries& s);
void to_json(nlohmann::json& j, const VectorSeries& s);
void from_json(const nlohmann::json& j, VectorSeries& s);

}  // namespace nbmaj
