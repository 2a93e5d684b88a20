#pragma once

#include <array>
#include <string>
#include <vector>

#include "soq/expr.hpp"
#include "soq/scalars.hpp"
#include "soq/weyl.hpp"

namespace soq {

struct RMatrixData {
  int N = 0;
  double q = 0.5;
  std::vector<double> rho;  // 1-based
  std::vector<double> r;    // R^{ij}_{mn} at ((i-1)N + (j-1))N^2 + (m-1)N + (n-1)

  int prime(int i) const { return N + 1 - i; }
  double C(int i, int j) const;  // C^i_j
  double R(int i, int j, int m, int n) const {
    return r[(((i - 1) * N + (j - 1)) * N + (m - 1)) * N + (n - 1)];
  }
};

RMatrixData build_rmatrix(int N, double q);

// Image of the fundamental matrix under a representation on nf Toeplitz factors (plus the circle variable).
struct RepMatrix {
  int N = 0;
  int nf = 0;
  double q = 0.5;
  std::string label;
  std::vector<Expr> e;  // row-major

  RepMatrix() = default;
  RepMatrix(int N_, int nf_, double q_, std::string label_ = {});
  const Expr& at(int i, int j) const { return e[(i - 1) * N + (j - 1)]; }
  Expr& at(int i, int j) { return e[(i - 1) * N + (j - 1)]; }
};

RepMatrix trivial_rep(int N, double q);
// Diagonal one-dimensional representation; t_degrees[i] is the power of t standing for t_{i+1}.
RepMatrix build_tau(int N, const std::vector<int>& t_degrees, double q);
RepMatrix build_elementary(LieType t, int n, int i, double q);
RepMatrix convolve(const RepMatrix& a, const RepMatrix& b);
RepMatrix build_pi(LieType t, int n, const WeylWord& w, const std::vector<int>& t_degrees, double q);
std::vector<int> single_circle_degrees(int n);  // every t_i collapsed onto t

// SU_{q^c}(2) matrix coefficients on one Toeplitz factor, indices 1..2.
Expr su2_entry(double c, int k, int l, double q);

// Embeds a representation of SO_q(N-2) through v^i_j -> u^{i-1}_{j-1} on inner indices, delta_ij on the border.
RepMatrix eta_N(const RepMatrix& inner);
// Symbol map on the last Toeplitz factor of every generator.
std::vector<Expr> rho_k(const std::vector<Expr>& gens);

struct FrtReport {
  double frt = 0.0;
  std::array<int, 4> frt_worst{0, 0, 0, 0};
  double unitary = 0.0;
  double involution = 0.0;
  double tol = 0.0;
  long relations = 0;
  bool passed() const { return frt <= tol && unitary <= tol && involution <= tol; }
};

struct FrtOptions {
  bool unitarity = true;
  bool involution = true;
};

FrtReport check_frt(const RepMatrix& rep, const RMatrixData& R, const QParams& p, const FrtOptions& opt = {});

// Row N images x_j = pi(v^N_{N+1-j}) and row 1 recovered through the involution.
struct QuotientGens {
  LieType type = LieType::B;
  int n = 1;
  int k = 1;
  int nf = 0;
  std::vector<Expr> x;     // x[j-1], j = 1..N
  std::vector<Expr> row1;  // row1[i-1] = pi(v^1_i)
  int expected_nonzero() const { return k <= n ? k : k + 1; }
};

QuotientGens quotient_generators(LieType t, int n, int k, double q);

// Entries of row N that are zero or eigen (on the vacuum) for the omega_k representation.
struct VanishingPattern {
  int zero_upto = 0;  // v^N_j = 0 for j <= zero_upto
  int eigen_index = 0;  // v^N_{eigen_index} e_0 = (+-) t e_0
};
VanishingPattern vanishing_pattern(LieType t, int n, int k);

struct VanishingCheck {
  VanishingPattern pattern;
  bool zeros_exact = false;   // every v^N_j with j <= zero_upto is the zero polynomial
  int sign = 0;               // v^N_{eigen_index} e_0 = sign * t e_0
  double eigen_residual = 0.0;
  bool passed() const { return zeros_exact && sign != 0 && eigen_residual == 0.0; }
};
VanishingCheck check_vanishing(LieType t, int n, int k, const QParams& p);

}  // namespace soq
