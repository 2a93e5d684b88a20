#include "soq/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace soq {

double default_tol(double q, int d, int m) {
  return std::max(1e-10, 10.0 * std::pow(q, 2.0 * (d - m)));
}

QParams make_params(double q, int d, int m, std::optional<double> tol) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
  if (d < 4) throw std::invalid_argument("trunc_dim must be >= 4");
  if (m < 0 || m >= d) throw std::invalid_argument("margin must satisfy 0 <= m < d");
  QParams p{q, d, m, default_tol(q, d, m)};
  if (tol) {
    if (!(*tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (*tol < 10.0 * std::pow(q, 2.0 * (d - m)))
      throw std::invalid_argument("tol below truncation floor 10 q^{2(d-m)}");
    p.tol = *tol;
  }
  return p;
}

double q_int(int a, double q) {
  return (std::pow(q, a) - std::pow(q, -a)) / (q - 1.0 / q);
}

double sqrt_series_coeff(int l, double q) {
  if (l < 0) throw std::invalid_argument("series index must be nonnegative");
  // (2l)! / (4^l (l!)^2) = prod_{j=1..l} (2j-1)/(2j), times q^{2l}
  double r = 1.0;
  const double q2 = q * q;
  for (int j = 1; j <= l; ++j) r *= q2 * (2.0 * j - 1.0) / (2.0 * j);
  return r / (2.0 * l - 1.0);
}

HwCoefficients hw_coefficients(int n, double q) {
  if (n < 1) throw std::invalid_argument("hw_coefficients needs n >= 1");
  HwCoefficients h;
  h.a1.assign(n + 1, 0.0);
  h.a2.assign(n + 1, 0.0);
  h.a1[0] = -std::pow(q, -2 * n + 1) * q_int(n, q);
  h.a1[n] = -q * q_int(n, q);
  for (int i = 1; i < n; ++i) {
    h.a1[i] = -std::pow(q, n - i + 1) * q_int(i, q);
    h.a2[i] = -std::pow(q, 3 * i - 2 * n + 1) * q_int(n - i, q);
  }
  return h;
}

}  // namespace soq
