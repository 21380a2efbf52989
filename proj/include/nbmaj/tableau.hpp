#pragma once

#include <cstddef>
#include <vector>

namespace nbmaj {

// Butcher tableau of an s-stage Runge-Kutta method. A is row-major s x s.
struct RKTableau {
  int stages = 0;
  std::vector<double> A;
  std::vector<double> b;
  std::vector<double> c;
  int order = 0;

  double a(int i, int j) const { return A[static_cast<std::size_t>(i * stages + j)]; }
  double norm_A_inf() const;  // max row sum of |a_ij|
  double norm_b_inf() const;  // max |b_i|
  double norm_b_one() const;  // sum |b_i|
};

// Gauss-Legendre collocation tableau with 1 <= stages <= 8 (order 2 stages).
// Nodes come from Newton iteration on the Legendre polynomial in long double.
RKTableau gauss_tableau(int stages);

// max |b_i a_ij + b_j a_ji - b_i b_j| (zero for symplectic tableaus).
double symplecticity_defect(const RKTableau& tab);

}  // namespace nbmaj
