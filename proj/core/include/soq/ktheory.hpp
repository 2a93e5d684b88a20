#pragma once

#include <string>
#include <vector>

#include "soq/opcalc.hpp"
#include "soq/scalars.hpp"

namespace soq {

// t (x) p^{(x)(k-1)} + 1 - 1 (x) p^{(x)(k-1)} on k-1 factors of size p.d
LaurentOp build_uk(int k, const QParams& p);

struct WindingOptions {
  int samples = 16;
  int max_samples = 1 << 14;
  double unitary_tol = 1e-8;
  double min_abs_det = 1e-8;
};

// Winding number of t -> det u(t) around the unit circle.
// Throws std::domain_error if u(t) is not unitary or det u(t) is near zero at some sample.
int winding(const LaurentOp& u, const WindingOptions& opt = {});

// A 1_{1}(A*A) + 1 - 1_{1}(A*A). A*A must be a diagonal degree-0 operator (std::invalid_argument otherwise).
// The indicator sits on the right so that its cut-off error stays on the top basis vectors.
LaurentOp lift_isometry(const LaurentOp& a, double tol);

enum class KCase { A, B, D };

std::string case_name(KCase c);
KCase case_from_name(const std::string& s);  // "A", "B", "D"

struct KWitnessReport {
  KCase kase = KCase::A;
  int n = 0;
  int k = 0;
  int d = 0;
  int winding = 0;            // of the unitary whose boundary is computed
  double defect_minus = 0.0;  // tr(1 - Y*Y) on the interior
  double defect_plus = 0.0;   // tr(1 - YY*) on the interior
  TruncOp defect_projection;  // interior part of 1 - YY*
  double projection_residual = 0.0;  // against the expected projection, entrywise
  double idempotent_residual = 0.0;  // max over both defects of ||P^2 - P||
  double selfadjoint_residual = 0.0;
  bool ideal_membership = false;
  double ideal_residual = 0.0;  // D case only
  int difference_small_d = 0;   // same computation at d = 8
  double tol = 0.0;
  std::vector<std::string> notices;

  long difference() const;  // rounded defect_plus - defect_minus
  int expected_difference() const { return kase == KCase::B ? 2 : 1; }
  bool passed() const;
};

// Case A: 2 <= k <= n, isometry t (x) (q^N)^{k-2} (x) S*.
// Case B: k = n+1, t (x) (q^N)^{n-1} (x) S*^2.
// Case D: k = n+1 in type D (n >= 2), t (x) (q^N)^{n-1} (x) S*.
KWitnessReport boundary_witness(KCase c, int n, int k, const QParams& p);

}  // namespace soq
