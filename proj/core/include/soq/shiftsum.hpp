#pragma once

#include <map>
#include <utility>
#include <vector>

#include "soq/expr.hpp"

namespace soq {

// Operator written as sum_{deg, sigma} t^deg D_{deg,sigma}(n) e_n -> e_{n + sigma},
// with every D tabulated on the box [0, window_f) of multi-indices n.
class ShiftSum {
 public:
  using Key = std::pair<int, std::vector<int>>;  // (t degree, shift vector)

  ShiftSum() = default;
  explicit ShiftSum(std::vector<int> window);

  const std::vector<int>& window() const { return window_; }
  int nf() const { return static_cast<int>(window_.size()); }
  long points() const { return points_; }
  const std::map<Key, std::vector<cplx>>& groups() const { return groups_; }
  std::vector<cplx>& group(const Key& k);

  void axpy(const ShiftSum& x, cplx a);
  void drop_zero_groups();

 private:
  std::vector<int> window_;
  long points_ = 1;
  std::map<Key, std::vector<cplx>> groups_;
};

// Net index shift of a word on its factor.
int word_shift(const Word& w);

// Tabulates e exactly (no truncation) on the box [0, window_f).
ShiftSum shift_sum(const Expr& e, double q, const std::vector<int>& window);
// (A B) tabulated on out_window; values of A outside its box count as zero.
ShiftSum multiply(const ShiftSum& a, const ShiftSum& b, const std::vector<int>& out_window);
// Upper bound on the norm of P X P, P the projection onto the box `interior`.
double compressed_bound(const ShiftSum& x, const std::vector<int>& interior);
// P X P as a graded sparse block indexed by the box `interior`.
Block compressed_block(const ShiftSum& x, const std::vector<int>& interior);

}  // namespace soq
