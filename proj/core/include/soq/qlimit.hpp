#pragma once

#include <string>
#include <vector>

#include "soq/opcalc.hpp"
#include "soq/scalars.hpp"

namespace soq {

enum class LimitFamily { B, D4 };

std::string family_name(LimitFamily f);
LimitFamily family_from_name(const std::string& s);  // "B", "D4"

// Generators at q and their q -> 0 replacements (sqrt(1 - q^{2N+a}) S* -> S*, q^N -> p).
// D4: k in {1,2,3}, names X0..X{k-1}, Y0..Y{k-1}, on k-1 factors.
// B, k <= n: x_1..x_k in the displayed closed form, on k-1 factors.
// B, k = n+1: the nonzero quotient generators of the omega_{n+1} representation.
struct LimitPair {
  LimitFamily family = LimitFamily::D4;
  int n = 0;
  int k = 0;
  double q = 0.5;
  std::vector<std::string> names;
  std::vector<LaurentOp> gens_q;
  std::vector<LaurentOp> gens_0;

  const LaurentOp& at_q(const std::string& name) const;
  const LaurentOp& at_0(const std::string& name) const;
};

LimitPair build_limit_pair(LimitFamily f, int n, int k, const QParams& p);

struct IdentityInfo {
  std::string name;
  LimitFamily family;
  int n = 0;  // pair the identity is evaluated on
  int k = 0;
  bool series = false;   // residual depends on the cutoff L
  bool printed = false;  // verbatim form of a display that needs a correction; not expected to vanish
  std::string anchor;    // the claim being checked
  // Lowest power of q^2 carried by the series variable on interior vectors: 2 when q^{2lN} sits left of S*.
  int series_power = 1;
};

const std::vector<IdentityInfo>& identity_catalog();
const IdentityInfo& identity_info(const std::string& name);  // std::invalid_argument if unknown

// Sum over Laurent degrees of the interior-compressed operator norm of lhs - rhs.
// An upper bound for the norm over the circle.
double verify_identity(const std::string& name, const LimitPair& pair, int L, const QParams& p);

struct IdentityResult {
  std::string name;
  std::string anchor;
  double q = 0.0;
  int d = 0;
  int L = 0;
  double residual = 0.0;
  bool series = false;
  bool printed = false;
  double decay_slope = 0.0;     // fitted d log(residual) / dL, series only
  double expected_slope = 0.0;  // 2 log q
  double derived_slope = 0.0;   // 2 series_power log q
  bool monotone = true;         // residual(L+2) <= residual(L)
  double tol = 0.0;

  bool slope_ok() const;          // within 20% of expected_slope
  bool derived_slope_ok() const;  // within 20% of derived_slope
  bool passed() const;
};

IdentityResult run_identity(const std::string& name, const QParams& p, int L = 12);
std::vector<IdentityResult> run_catalog(const QParams& p, int L = 12, bool include_printed = false);

struct ContinuityReport {
  LimitFamily family = LimitFamily::B;
  int n = 0;
  int k = 0;
  std::vector<double> grid;
  std::vector<std::string> names;
  std::vector<std::vector<double>> diffs;  // diffs[g][i] = ||x_g(grid[i+1]) - x_g(grid[i])||
  double lipschitz = 0.0;                  // max diff / |dq|
  double max_jump_ratio = 0.0;             // max over generators of max diff / median diff
  bool passed() const;
};

// j = 0 sweeps every generator, otherwise only the j-th (1-based).
ContinuityReport continuity_sweep(LimitFamily f, int n, int k, int j, const std::vector<double>& grid,
                                  int d = 16, int m = 6);

}  // namespace soq
