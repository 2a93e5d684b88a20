#pragma once

#include <optional>
#include <vector>

namespace soq {

// Deformation parameter plus truncation scheme shared by every numerical check.
struct QParams {
  double q = 0.5;
  int d = 16;  // cut-off dimension per Toeplitz factor
  int m = 6;   // interior margin: basis indices >= d - m are excluded from checks
  double tol = 0.0;
};

// max(1e-10, 10 q^{2(d-m)})
double default_tol(double q, int d, int m);

// Validates ranges and fills tol. Throws std::invalid_argument.
QParams make_params(double q, int d = 16, int m = 6, std::optional<double> tol = std::nullopt);

// [a]_q = (q^a - q^-a) / (q - q^-1)
double q_int(int a, double q);

// q^{2l} (2l)! / (4^l (l!)^2 (2l - 1)); sqrt(1 - q^2 y) = -sum_l coeff_l y^l for 0 <= y <= 1.
double sqrt_series_coeff(int l, double q);

// Ladder coefficients for E_1 acting on b^{n-i} c^{n-i} a^i d^i type monomials.
// a1 has entries 0..n. a2 has entries 0..n; only 1..n-1 are defined, the ends are 0.
struct HwCoefficients {
  std::vector<double> a1;
  std::vector<double> a2;
};
HwCoefficients hw_coefficients(int n, double q);

}  // namespace soq
