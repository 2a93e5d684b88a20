// Runs the desk-scale configuration and prints one line per acceptance criterion.
// Exit code is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "soq/branching.hpp"
#include "soq_cli/cli.hpp"

using namespace soq;
using soq::cli::Check;
using soq::cli::Report;

namespace {

struct Tally {
  int total = 0;
  int failed = 0;
  std::vector<std::string> first;
};

Tally tally(const Report& r, const std::string& suite, bool (*keep)(const Check&) = nullptr) {
  Tally t;
  for (const auto& c : r.checks) {
    if (c.suite != suite || c.informational) continue;
    if (keep && !keep(c)) continue;
    ++t.total;
    if (!c.passed) {
      ++t.failed;
      if (t.first.size() < 3) t.first.push_back(c.name);
    }
  }
  return t;
}

bool line(int id, const std::string& what, bool ok, const std::string& detail) {
  std::printf("criterion %d %s: %s (%s)\n", id, what.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  return ok;
}

std::string describe(const Tally& t) {
  std::string s = std::to_string(t.total - t.failed) + "/" + std::to_string(t.total) + " checks";
  if (!t.first.empty()) {
    s += "; failing:";
    for (const auto& n : t.first) s += " [" + n + "]";
    if (t.failed > static_cast<int>(t.first.size())) s += " ...";
  }
  return s;
}

bool suite_line(int id, const std::string& what, const Tally& t) {
  return line(id, what, t.total > 0 && t.failed == 0, describe(t));
}

// Trivial beta exhaustively, then random nontrivial beta against the separate enumeration.
bool branching_line() {
  long trivial = 0, trivial_bad = 0, random = 0, random_bad = 0;
  for (int N = 4; N <= 9; ++N)
    for (const auto& a : dominant_weights(N, 6)) {
      ++trivial;
      const std::vector<int> b(N / 2 - 1, 0);
      const long m = multiplicity({N, a, b});
      if (m != trivial_multiplicity(a, N) || m != oracle::two_step(N, a, b)) ++trivial_bad;
    }
  std::mt19937_64 rng(20240601);
  while (random < 200) {
    const int N = 4 + static_cast<int>(rng() % 6);
    const auto a = oracle::random_dominant(N, 6, rng);
    const auto b = oracle::random_dominant(N - 2, 6, rng);
    bool zero = true;
    for (int x : b) zero = zero && x == 0;
    if (zero) continue;
    ++random;
    if (multiplicity({N, a, b}) != oracle::two_step(N, a, b)) ++random_bad;
  }
  const std::string detail = std::to_string(trivial - trivial_bad) + "/" + std::to_string(trivial) +
                             " trivial-beta weights, " + std::to_string(random - random_bad) + "/" +
                             std::to_string(random) + " random queries";
  return line(3, "branching", trivial_bad == 0 && random_bad == 0, detail);
}

}  // namespace

int main() {
  soq::cli::RunConfig cfg;
  cfg.command = "all";
  soq::cli::normalize(cfg);

  const auto t0 = std::chrono::steady_clock::now();
  const Report first = soq::cli::suite_all(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("desk-scale run: %zu checks in %.1f s\n", first.checks.size(), secs);

  bool all = true;
  all &= suite_line(1, "FRT relations, unitarity, involution", tally(first, "frt"));
  all &= suite_line(2, "vanishing patterns", tally(first, "irreps"));
  all &= branching_line();
  all &= suite_line(4, "highest weight vectors", tally(first, "hw"));
  all &= suite_line(5, "K-theory witnesses", tally(first, "ktheory"));
  all &= suite_line(6, "q-limit identities and continuity", tally(first, "qlimit"));

  const Report second = soq::cli::suite_all(cfg);
  const bool same = first.to_json().dump() == second.to_json().dump();
  long unanchored = 0;
  for (const auto& c : first.checks) unanchored += c.anchor.empty();
  all &= line(7, "determinism and anchors", same && unanchored == 0,
              std::string(same ? "identical reports" : "reports differ") + ", " + std::to_string(unanchored) +
                  " checks without anchor");
  return all ? 0 : 1;
}
