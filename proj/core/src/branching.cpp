#include "soq/branching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace soq {

bool is_dominant(int N, const std::vector<int>& w) {
  const int n = N / 2;
  if (static_cast<int>(w.size()) != n) return false;
  if (n == 0) return true;
  for (int i = 0; i + 1 < n; ++i)
    if (w[i] < w[i + 1]) return false;
  if (N % 2 == 1) return w[n - 1] >= 0;
  if (n >= 2) return w[n - 2] >= std::abs(w[n - 1]);
  return true;  // SO(2): any integer
}

void validate(const BranchQuery& qy) {
  if (qy.N < 3) throw std::invalid_argument("branching needs N >= 3");
  if (!is_dominant(qy.N, qy.alpha)) throw std::invalid_argument("alpha is not a dominant weight of SO(N)");
  if (!is_dominant(qy.N - 2, qy.beta)) throw std::invalid_argument("beta is not a dominant weight of SO(N-2)");
}

namespace {

// Counts integer tuples x in [lo_i, hi_i] accepted by `ok`; bounds are static boxes.
long count_box(const std::vector<int>& lo, const std::vector<int>& hi,
               const std::function<bool(const std::vector<int>&)>& ok) {
  const int k = static_cast<int>(lo.size());
  for (int i = 0; i < k; ++i)
    if (lo[i] > hi[i]) return 0;
  std::vector<int> x = lo;
  long count = 0;
  while (true) {
    if (ok(x)) ++count;
    int i = k - 1;
    while (i >= 0 && ++x[i] > hi[i]) {
      x[i] = lo[i];
      --i;
    }
    if (i < 0) break;
  }
  return count;
}

}  // namespace

long multiplicity(const BranchQuery& qy, BranchRule rule) {
  validate(qy);
  const int N = qy.N, n = N / 2;
  const auto& a = qy.alpha;
  const auto& b = qy.beta;
  const int A = n ? std::abs(a[0]) : 0;
  const bool odd = N % 2 == 1;
  if (rule == BranchRule::Classical) {
    if (odd) {
      // eta in Z^n: a1 >= e1 >= a2 >= ... >= a_n >= |e_n|; e1 >= b1 >= e2 >= ... >= b_{n-1} >= |e_n|
      std::vector<int> lo(n), hi(n);
      for (int i = 0; i < n; ++i) {
        hi[i] = a[i];
        lo[i] = i + 1 < n ? a[i + 1] : -a[n - 1];
      }
      return count_box(lo, hi, [&](const std::vector<int>& e) {
        for (int i = 0; i + 1 < n; ++i)
          if (!(e[i] >= b[i] && b[i] >= e[i + 1])) return false;
        return n < 2 || b[n - 2] >= std::abs(e[n - 1]);
      });
    }
    // eta in Z^{n-1}: a1 >= e1 >= a2 >= ... >= e_{n-1} >= |a_n|; e1 >= b1 >= ... >= e_{n-1} >= |b_{n-1}|
    std::vector<int> lo(n - 1), hi(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
      hi[i] = a[i];
      lo[i] = i + 2 < n ? a[i + 1] : std::abs(a[n - 1]);
    }
    return count_box(lo, hi, [&](const std::vector<int>& e) {
      for (int i = 0; i + 1 < n; ++i) {
        if (e[i] < b[i]) return false;
        if (i + 2 < n && b[i] < e[i + 1]) return false;
      }
      return n < 2 || e[n - 2] >= std::abs(b[n - 2]);
    });
  }
  // As printed: gamma in Z^n over the box [-alpha_1, alpha_1].
  std::vector<int> lo(n, -A), hi(n, A);
  return count_box(lo, hi, [&](const std::vector<int>& g) {
    for (int i = 0; i < n; ++i) {
      if (a[i] < g[i] && !(i == n - 1 && !odd)) return false;
      if (i + 1 < n && g[i] < a[i + 1] && !(i + 1 == n - 1 && !odd)) return false;
    }
    if (odd) {
      if (g[n - 1] < 0) return false;
      for (int i = 0; i + 1 < n; ++i)
        if (!(g[i] >= b[i] && b[i] >= g[i + 1])) return false;
      return true;
    }
    // a1 >= g1 >= ... >= g_{n-1} >= |a_n| >= g_n; g1 >= b1 >= ... >= g_{n-1} >= |b_{n-1}| >= g_n
    if (n >= 2 && g[n - 2] < std::abs(a[n - 1])) return false;
    if (g[n - 1] > std::abs(a[n - 1])) return false;
    for (int i = 0; i + 1 < n; ++i) {
      if (g[i] < b[i]) return false;
      if (i + 2 < n && b[i] < g[i + 1]) return false;
    }
    if (n >= 2) {
      if (g[n - 2] < std::abs(b[n - 2])) return false;
      if (g[n - 1] > std::abs(b[n - 2])) return false;
      if (g[n - 1] < -std::min(std::abs(a[n - 1]), std::abs(b[n - 2]))) return false;
    }
    return true;
  });
}

long trivial_multiplicity(const std::vector<int>& alpha, int N) {
  if (N < 4) throw std::invalid_argument("trivial_multiplicity needs N >= 4");
  if (!is_dominant(N, alpha)) throw std::invalid_argument("alpha is not a dominant weight of SO(N)");
  for (std::size_t i = 2; i < alpha.size(); ++i)
    if (alpha[i] != 0) return 0;
  return N == 4 ? alpha[0] - std::abs(alpha[1]) + 1 : alpha[0] - alpha[1] + 1;
}

long weyl_dimension(int N, const std::vector<int>& w) {
  if (N < 2) throw std::invalid_argument("weyl_dimension needs N >= 2");
  if (!is_dominant(N, w)) throw std::invalid_argument("not a dominant weight");
  const int n = N / 2;
  if (N == 2) return 1;
  const bool odd = N % 2 == 1;
  std::vector<double> rho(n), l(n);
  for (int i = 0; i < n; ++i) {
    rho[i] = odd ? n - i - 0.5 : n - i - 1.0;
    l[i] = w[i] + rho[i];
  }
  double num = 1.0, den = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      num *= (l[i] - l[j]) * (l[i] + l[j]);
      den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
    }
    if (odd) {
      num *= l[i];
      den *= rho[i];
    }
  }
  return std::lround(num / den);
}

std::vector<std::vector<int>> dominant_weights(int N, int max_first) {
  const int n = N / 2;
  std::vector<std::vector<int>> out;
  std::vector<int> w(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      if (is_dominant(N, w)) out.push_back(w);
      return;
    }
    const int hi = i == 0 ? max_first : w[i - 1];
    const int lo = (i == n - 1 && N % 2 == 0) ? -hi : 0;
    for (int v = lo; v <= hi; ++v) {
      w[i] = v;
      rec(i + 1);
    }
  };
  if (n == 0) return {{}};
  rec(0);
  return out;
}

std::string rule_name(BranchRule r) { return r == BranchRule::Classical ? "classical" : "as-printed"; }

BranchRule rule_from_name(const std::string& s) {
  if (s == "classical") return BranchRule::Classical;
  if (s == "as-printed") return BranchRule::AsPrinted;
  throw std::invalid_argument("unknown branching rule: " + s);
}

}  // namespace soq
