#pragma once

#include <string>
#include <vector>

namespace soq {

// Classical: two-step SO(N) > SO(N-1) > SO(N-2) interleaving (n-1 intermediate entries for even N,
// |eta_n| <= min(alpha_n, beta_{n-1}) for odd N).
// AsPrinted: the displayed chains with gamma_n >= 0 for odd N and gamma_n >= -min(|alpha_n|, |beta_{n-1}|) for even N.
enum class BranchRule { Classical, AsPrinted };

struct BranchQuery {
  int N = 5;
  std::vector<int> alpha;  // length floor(N/2)
  std::vector<int> beta;   // length floor(N/2) - 1
};

// alpha_1 >= ... >= alpha_n >= 0 for odd N, alpha_1 >= ... >= |alpha_n| for even N.
bool is_dominant(int N, const std::vector<int>& w);
void validate(const BranchQuery& qy);  // throws std::invalid_argument

long multiplicity(const BranchQuery& qy, BranchRule rule = BranchRule::Classical);
// alpha_1 - alpha_2 + 1 (N > 4) or alpha_1 - |alpha_2| + 1 (N = 4) when alpha_i = 0 for i >= 3, else 0.
long trivial_multiplicity(const std::vector<int>& alpha, int N);
// Weyl dimension formula for SO(N), N >= 2.
long weyl_dimension(int N, const std::vector<int>& w);
// Dominant weights of SO(N) with first entry <= max_first.
std::vector<std::vector<int>> dominant_weights(int N, int max_first);

std::string rule_name(BranchRule r);
BranchRule rule_from_name(const std::string& s);

}  // namespace soq
