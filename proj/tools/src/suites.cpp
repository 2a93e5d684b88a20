#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "soq/branching.hpp"
#include "soq/ktheory.hpp"
#include "soq/qlimit.hpp"
#include "soq/quea.hpp"
#include "soq/repbuilder.hpp"
#include "soq_cli/cli.hpp"

namespace soq::cli {

using nlohmann::ordered_json;

namespace {

constexpr const char* kFrtAnchor = "R-matrix relation, unitarity and involution of the fundamental matrix";
constexpr const char* kVanishAnchor =
    "omega_k representation: v^N_j = 0 below the eigen index, v^N_j e_0 = +-t e_0 at it";
constexpr const char* kTrivialAnchor = "trivial-beta branching multiplicity alpha_1 - alpha_2 + 1 (alpha_1 - |alpha_2| + 1 for N = 4)";
constexpr const char* kDimAnchor = "SO(N) > SO(N-2) branching multiplicities reproduce the Weyl dimension";
constexpr const char* kHwAnchor =
    "highest weight families: E_i annihilation, K_i eigenvalues, count equals the trivial branching multiplicity";
constexpr const char* kLadderAnchor = "E_1 ladder identity on a^i b^{n-i} c^{n-i} d^i";
constexpr const char* kWindingAnchor = "u_k = t (x) p^{k-1} + 1 - 1 (x) p^{k-1} has winding number 1";
constexpr const char* kConjAnchor = "winding number is invariant under conjugation by a constant unitary";
constexpr const char* kContinuityAnchor = "norm continuity of q -> x_{j,q} behind the homotopy of Busby invariants";

std::vector<int> desk_range(int N, int lo, int hi) {
  if (N != 0) return {N};
  std::vector<int> r;
  for (int i = lo; i <= hi; ++i) r.push_back(i);
  return r;
}

QParams params_for(const RunConfig& cfg, double q) { return make_params(q, cfg.d, cfg.m, cfg.tol); }

std::string fmt_q(double q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string tuple_str(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

Report make_report(const RunConfig& cfg, const std::string& command) {
  Report r;
  r.command = command;
  r.config = config_json(cfg);
  return r;
}

Check frt_check(const RepMatrix& rep, const std::string& word, const RMatrixData& R, const QParams& p) {
  const FrtReport f = check_frt(rep, R, p);
  Check c;
  c.suite = "frt";
  c.name = "N=" + std::to_string(rep.N) + " q=" + fmt_q(p.q) + " " + rep.label;
  c.anchor = kFrtAnchor;
  c.passed = f.passed();
  c.data = {{"N", rep.N},          {"q", p.q},
            {"rep", rep.label},    {"word", word},
            {"factors", rep.nf},   {"frt", f.frt},
            {"frt_worst", std::vector<int>(f.frt_worst.begin(), f.frt_worst.end())},
            {"unitary", f.unitary}, {"involution", f.involution},
            {"relations", f.relations}, {"tol", f.tol}};
  return c;
}

// Haar-distributed unitary from the QR factors of a complex Gaussian matrix.
DMat random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  DMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<DMat> qr(a);
  DMat qm = qr.householderQ() * DMat::Identity(n, n);
  const DMat rm = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) qm.col(j) *= rm(j, j) / std::abs(rm(j, j));
  return qm;
}

LaurentOp conjugate(const LaurentOp& u, const DMat& v) {
  LaurentOp r(u.dims());
  for (const auto& [deg, c] : u.terms()) {
    DMat m = v * c.dense() * v.adjoint();
    r.set(deg, TruncOp(u.dims(), m.sparseView(1.0, 1e-300)));
  }
  return r;
}

ordered_json witness_json(const KWitnessReport& w) {
  return {{"case", case_name(w.kase)},
          {"n", w.n},
          {"k", w.k},
          {"d", w.d},
          {"winding", w.winding},
          {"defect_minus", w.defect_minus},
          {"defect_plus", w.defect_plus},
          {"difference", w.difference()},
          {"expected_difference", w.expected_difference()},
          {"difference_d8", w.difference_small_d},
          {"projection_residual", w.projection_residual},
          {"idempotent_residual", w.idempotent_residual},
          {"selfadjoint_residual", w.selfadjoint_residual},
          {"ideal_membership", w.ideal_membership},
          {"ideal_residual", w.ideal_residual},
          {"tol", w.tol},
          {"notices", w.notices}};
}

std::string witness_anchor(KCase c) {
  switch (c) {
    case KCase::A:
      return "index map of [u_{k-1}]: defect [1 (x) p^{k-1}] of the lifted isometry (case A)";
    case KCase::B:
      return "index map of [u_n]: defect 1 (x) p^{n-1} (x) (p + p_1), twice the minimal class (case B)";
    case KCase::D:
      return "even case index map: defect [1 (x) p^n] lies in the ideal J_{n+1} (case D)";
  }
  return {};
}

Check witness_check(KCase c, int n, int k, const QParams& p) {
  Check ch;
  ch.suite = "ktheory";
  ch.name = "case " + case_name(c) + " n=" + std::to_string(n) + " k=" + std::to_string(k) + " q=" + fmt_q(p.q);
  ch.anchor = witness_anchor(c);
  try {
    const KWitnessReport w = boundary_witness(c, n, k, p);
    ch.passed = w.passed();
    ch.data = witness_json(w);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    ch.passed = false;
    ch.data = {{"error", e.what()}};
  }
  return ch;
}

Check identity_check(const IdentityResult& r) {
  Check c;
  c.suite = "qlimit";
  c.name = r.name + " q=" + fmt_q(r.q);
  c.anchor = r.anchor;
  c.passed = r.passed();
  c.informational = r.printed;
  c.data = {{"identity", r.name}, {"q", r.q}, {"d", r.d}, {"L", r.L}, {"residual", r.residual}, {"tol", r.tol}};
  if (r.series) {
    c.data["decay_slope"] = r.decay_slope;
    c.data["expected_slope"] = r.expected_slope;
    c.data["derived_slope"] = r.derived_slope;
    c.data["slope_ok"] = r.slope_ok();
    c.data["derived_slope_ok"] = r.derived_slope_ok();
    c.data["monotone"] = r.monotone;
  }
  if (r.printed) c.data["note"] = "verbatim form of a display that needs a correction";
  return c;
}

Check continuity_check(LimitFamily f, int n, int k, const std::vector<double>& grid, const RunConfig& cfg) {
  const ContinuityReport rep = continuity_sweep(f, n, k, 0, grid, cfg.d, cfg.m);
  Check c;
  c.suite = "qlimit";
  c.name = "continuity " + family_name(f) + " n=" + std::to_string(n) + " k=" + std::to_string(k);
  c.anchor = kContinuityAnchor;
  c.passed = rep.passed();
  ordered_json diffs = ordered_json::object();
  for (std::size_t g = 0; g < rep.names.size(); ++g) diffs[rep.names[g]] = rep.diffs[g];
  c.data = {{"family", family_name(f)}, {"n", n},      {"k", k},
            {"grid", grid},             {"lipschitz", rep.lipschitz},
            {"max_jump_ratio", rep.max_jump_ratio},    {"diffs", diffs}};
  return c;
}

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 8; ++i) g.push_back(std::round((0.3 + 0.05 * i) * 1e12) / 1e12);
  return g;
}

}  // namespace

Report suite_frt(const RunConfig& cfg) {
  Report r = make_report(cfg, "check-frt");
  for (double q : cfg.qs) {
    const QParams p = params_for(cfg, q);
    for (int N : desk_range(cfg.N, 4, 7)) {
      const LieType t = type_from_N(N);
      const int n = rank_from_N(N);
      const RMatrixData R = build_rmatrix(N, q);
      if (!cfg.word.empty()) {
        const WeylWord w = parse_word(t, n, cfg.word);
        r.checks.push_back(frt_check(build_pi(t, n, w, single_circle_degrees(n), q), w.str(), R, p));
        continue;
      }
      for (int i = 1; i <= n; ++i)
        r.checks.push_back(frt_check(build_elementary(t, n, i, q), "s" + std::to_string(i), R, p));
      for (int k = 1; k <= omega_k_max(t, n); ++k) {
        const WeylWord w = omega_k(t, n, k);
        if (static_cast<int>(w.length()) > cfg.max_length) continue;
        r.checks.push_back(frt_check(build_pi(t, n, w, single_circle_degrees(n), q), w.str(), R, p));
      }
      if (cfg.eta && N >= 5) {
        const LieType ti = type_from_N(N - 2);
        const int ni = rank_from_N(N - 2);
        const WeylWord w0 = longest_element(ti, ni);
        RepMatrix e = eta_N(build_pi(ti, ni, w0, single_circle_degrees(ni), q));
        r.checks.push_back(frt_check(e, "eta(" + w0.str() + ")", R, p));
      }
    }
  }
  return r;
}

Report suite_irreps(const RunConfig& cfg) {
  Report r = make_report(cfg, "irreps");
  for (double q : cfg.qs) {
    const QParams p = params_for(cfg, q);
    for (int N : desk_range(cfg.N, 3, 7)) {
      const LieType t = type_from_N(N);
      const int n = rank_from_N(N);
      for (int k = 1; k <= omega_k_max(t, n); ++k) {
        if (cfg.k != 0 && k != cfg.k) continue;
        const VanishingCheck v = check_vanishing(t, n, k, p);
        Check c;
        c.suite = "irreps";
        c.name = "N=" + std::to_string(N) + " k=" + std::to_string(k) + " q=" + fmt_q(q);
        c.anchor = kVanishAnchor;
        c.passed = v.passed();
        c.data = {{"N", N},
                  {"k", k},
                  {"q", q},
                  {"word", omega_k(t, n, k).str()},
                  {"zero_upto", v.pattern.zero_upto},
                  {"eigen_index", v.pattern.eigen_index},
                  {"zeros_exact", v.zeros_exact},
                  {"sign", v.sign},
                  {"eigen_residual", v.eigen_residual}};
        r.checks.push_back(std::move(c));
      }
    }
  }
  return r;
}

Report suite_branch(const RunConfig& cfg) {
  Report r = make_report(cfg, "branch");
  const BranchRule rule = rule_from_name(cfg.rule);
  if (!cfg.alpha.empty()) {
    if (cfg.N == 0) throw std::invalid_argument("branch query needs --N");
    BranchQuery qy{cfg.N, cfg.alpha, cfg.beta};
    validate(qy);
    const long mult = multiplicity(qy, rule);
    const bool trivial = std::all_of(cfg.beta.begin(), cfg.beta.end(), [](int b) { return b == 0; });
    Check c;
    c.suite = "branch";
    c.name = "N=" + std::to_string(cfg.N) + " alpha=" + tuple_str(cfg.alpha) + " beta=" + tuple_str(cfg.beta);
    c.anchor = trivial ? kTrivialAnchor : "two-step interleaving count";
    c.data = {{"N", cfg.N}, {"alpha", tuple_str(cfg.alpha)}, {"beta", tuple_str(cfg.beta)},
              {"rule", rule_name(rule)}, {"multiplicity", mult}};
    if (trivial) {
      const long expect = trivial_multiplicity(cfg.alpha, cfg.N);
      c.data["expected"] = expect;
      c.passed = mult == expect;
    } else {
      c.passed = true;
    }
    r.checks.push_back(std::move(c));
    return r;
  }
  for (int N : desk_range(cfg.N, 4, 9)) {
    const int nb = N / 2 - 1;
    long total = 0, bad = 0;
    ordered_json first_bad;
    for (const auto& a : dominant_weights(N, cfg.max_first)) {
      const long m = multiplicity({N, a, std::vector<int>(nb, 0)}, rule);
      const long t = trivial_multiplicity(a, N);
      ++total;
      if (m != t) {
        if (bad++ == 0) first_bad = {{"alpha", tuple_str(a)}, {"multiplicity", m}, {"expected", t}};
      }
    }
    Check c;
    c.suite = "branch";
    c.name = "trivial beta N=" + std::to_string(N);
    c.anchor = kTrivialAnchor;
    c.passed = bad == 0;
    c.data = {{"N", N}, {"rule", rule_name(rule)}, {"max_first", cfg.max_first}, {"weights", total}, {"mismatches", bad}};
    if (bad) c.data["first_mismatch"] = first_bad;
    r.checks.push_back(std::move(c));

    long dbad = 0, dtotal = 0;
    ordered_json dfirst;
    const int cap = std::min(cfg.max_first, 4);
    for (const auto& a : dominant_weights(N, cap)) {
      long sum = 0;
      for (const auto& b : dominant_weights(N - 2, a.empty() ? 0 : a[0]))
        sum += multiplicity({N, a, b}, rule) * weyl_dimension(N - 2, b);
      const long dim = weyl_dimension(N, a);
      ++dtotal;
      if (sum != dim && dbad++ == 0) dfirst = {{"alpha", tuple_str(a)}, {"sum", sum}, {"dimension", dim}};
    }
    Check dc;
    dc.suite = "branch";
    dc.name = "dimension sum N=" + std::to_string(N);
    dc.anchor = kDimAnchor;
    dc.passed = dbad == 0;
    dc.data = {{"N", N}, {"rule", rule_name(rule)}, {"max_first", cap}, {"weights", dtotal}, {"mismatches", dbad}};
    if (dbad) dc.data["first_mismatch"] = dfirst;
    r.checks.push_back(std::move(dc));
  }
  return r;
}

Report suite_hw(const RunConfig& cfg) {
  Report r = make_report(cfg, "hw");
  for (double q : cfg.qs) {
    const QParams p = params_for(cfg, q);
    for (int N : desk_range(cfg.N, 4, 7)) {
      if (N < 4) throw std::invalid_argument("hw needs N >= 4");
      PolyEvaluator ev = make_faithful_evaluator(N, p);
      const int n = rank_from_N(N);
      std::vector<std::pair<int, int>> lams;
      if (cfg.l1) {
        lams.emplace_back(*cfg.l1, cfg.l2.value_or(0));
      } else {
        for (int a = 0; a <= cfg.max_l1; ++a)
          for (int b = (N == 4 ? -a : 0); b <= a; ++b) lams.emplace_back(a, b);
      }
      for (auto [a, b] : lams) {
        const HighestWeight hw{N, a, b};
        validate(hw);
        const auto xs = build_hw_vectors(hw, q);
        double e = 0.0, k = 0.0, nm = INFINITY;
        bool each = true;
        for (const auto& x : xs) {
          const HwReport h = verify_hw(x, hw, ev);
          e = std::max(e, h.e_residual);
          k = std::max(k, h.k_residual);
          nm = std::min(nm, h.norm);
          each = each && h.passed(p.tol);
        }
        const RankReport rk = linear_independence(xs, ev);
        std::vector<int> alpha(n, 0);
        alpha[0] = a;
        if (n > 1) alpha[1] = b;
        const long triv = trivial_multiplicity(alpha, N);
        const int expect = expected_hw_count(hw);
        Check c;
        c.suite = "hw";
        c.name = "N=" + std::to_string(N) + " lambda=(" + std::to_string(a) + "," + std::to_string(b) + ") q=" + fmt_q(q);
        c.anchor = kHwAnchor;
        c.passed = each && rk.rank == static_cast<int>(xs.size()) && rk.rank == expect && expect == triv;
        c.data = {{"N", N},        {"lambda", tuple_str({a, b})}, {"q", q},
                  {"count", xs.size()}, {"rank", rk.rank},        {"expected", expect},
                  {"trivial_multiplicity", triv}, {"e_residual", e}, {"k_residual", k},
                  {"min_norm", nm}, {"smallest_singular", rk.singular_values.empty() ? 0.0 : rk.singular_values.back()},
                  {"tol", p.tol}};
        r.checks.push_back(std::move(c));
      }
      if (!cfg.l1) {
        double worst = 0.0;
        for (int l = 1; l <= 3; ++l) worst = std::max(worst, e1_ladder_residual(l, ev, q));
        Check c;
        c.suite = "hw";
        c.name = "ladder N=" + std::to_string(N) + " q=" + fmt_q(q);
        c.anchor = kLadderAnchor;
        c.passed = worst <= p.tol;
        c.data = {{"N", N}, {"q", q}, {"residual", worst}, {"tol", p.tol}};
        r.checks.push_back(std::move(c));
      }
    }
  }
  return r;
}

Report suite_ktheory(const RunConfig& cfg) {
  Report r = make_report(cfg, "ktheory");
  std::mt19937_64 rng(cfg.seed);
  WindingOptions wopt;
  wopt.samples = std::max(4, std::min(cfg.samples, wopt.max_samples / 8));
  for (double q : cfg.qs) {
    const QParams p = params_for(cfg, q);
    if (!cfg.kcase.empty()) {
      const KCase c = case_from_name(cfg.kcase);
      if (cfg.n < 1) throw std::invalid_argument("ktheory --case needs --n");
      int k = cfg.k;
      if (k == 0) {
        if (c == KCase::A) throw std::invalid_argument("case A needs --k");
        k = cfg.n + 1;
      }
      r.checks.push_back(witness_check(c, cfg.n, k, p));
      continue;
    }
    const QParams p8 = make_params(q, 8, std::min(cfg.m, 3));
    for (int k = 1; k <= 5; ++k) {
      Check c;
      c.suite = "ktheory";
      c.name = "winding u_" + std::to_string(k) + " q=" + fmt_q(q);
      c.anchor = kWindingAnchor;
      const int w = winding(build_uk(k, p8), wopt);
      c.passed = w == 1;
      c.data = {{"k", k}, {"d", p8.d}, {"winding", w}};
      r.checks.push_back(std::move(c));
    }
    {
      QParams p4 = p8;
      p4.d = 4;
      const LaurentOp u = build_uk(3, p4);
      std::vector<int> ws;
      bool ok = true;
      for (int trial = 0; trial < 3; ++trial) {
        const int w = winding(conjugate(u, random_unitary(16, rng)), wopt);
        ws.push_back(w);
        ok = ok && w == 1;
      }
      Check c;
      c.suite = "ktheory";
      c.name = "winding conjugated u_3 q=" + fmt_q(q);
      c.anchor = kConjAnchor;
      c.passed = ok;
      c.data = {{"k", 3}, {"d", 4}, {"trials", ws.size()}, {"windings", ws}, {"seed", cfg.seed}};
      r.checks.push_back(std::move(c));
    }
    for (auto [n, k] : {std::pair{2, 2}, {3, 2}, {3, 3}}) r.checks.push_back(witness_check(KCase::A, n, k, p));
    for (int n = 1; n <= 3; ++n) r.checks.push_back(witness_check(KCase::B, n, n + 1, p));
    for (int n = 2; n <= 3; ++n) r.checks.push_back(witness_check(KCase::D, n, n + 1, p));
  }
  r.notices.push_back("case C of the odd series shares the case A witness");
  r.notices.push_back("the K0 class of the even-case defect is not decided numerically");
  return r;
}

Report suite_qlimit(const RunConfig& cfg) {
  Report r = make_report(cfg, "qlimit");
  for (double q : cfg.qs) {
    const QParams p = params_for(cfg, q);
    if (!cfg.identity.empty()) {
      r.checks.push_back(identity_check(run_identity(cfg.identity, p, cfg.L)));
      continue;
    }
    if (!cfg.family.empty()) continue;
    for (const auto& res : run_catalog(p, cfg.L, cfg.printed)) r.checks.push_back(identity_check(res));
  }
  if (cfg.identity.empty()) {
    const std::vector<double> grid = cfg.grid.empty() ? default_grid() : cfg.grid;
    if (cfg.family.empty()) {
      r.checks.push_back(continuity_check(LimitFamily::B, 2, 3, grid, cfg));
      r.checks.push_back(continuity_check(LimitFamily::D4, 0, 3, grid, cfg));
    } else {
      const LimitFamily f = family_from_name(cfg.family);
      const int n = f == LimitFamily::B ? (cfg.n ? cfg.n : 2) : 0;
      const int k = cfg.k ? cfg.k : (f == LimitFamily::B ? n + 1 : 3);
      r.checks.push_back(continuity_check(f, n, k, grid, cfg));
    }
  }
  r.notices.push_back("series decay slope is compared with 2 log q; derived_slope accounts for the series variable offset");
  return r;
}

Report suite_all(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.N = 0;
  c.k = 0;
  c.word.clear();
  c.alpha.clear();
  c.beta.clear();
  c.l1.reset();
  c.l2.reset();
  c.kcase.clear();
  c.identity.clear();
  c.family.clear();
  Report r = make_report(cfg, "all");
  r.append(suite_frt(c));
  r.append(suite_irreps(c));
  r.append(suite_branch(c));
  r.append(suite_hw(c));
  r.append(suite_ktheory(c));
  r.append(suite_qlimit(c));
  return r;
}

}  // namespace soq::cli
