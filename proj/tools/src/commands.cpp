#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "soq_cli/cli.hpp"

namespace soq::cli {

namespace {

std::string extension(const std::string& format) { return format == "md" ? "md" : format; }

void emit(const Report& r, const RunConfig& cfg) {
  const std::string text = r.render(cfg.format);
  std::filesystem::path path;
  if (!cfg.output.empty()) {
    path = cfg.output;
  } else if (const char* dir = std::getenv(kOutputEnv); dir && *dir) {
    std::filesystem::create_directories(dir);
    path = std::filesystem::path(dir) / (r.command + "." + extension(cfg.format));
  }
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  std::cerr << "soq-lab: " << r.checks.size() << " checks written to " << path.string() << "\n";
}

int execute(const RunConfig& in, const std::function<Report(const RunConfig&)>& suite) {
  RunConfig cfg = in;
  try {
    normalize(cfg);
    const Report r = suite(cfg);
    emit(r, cfg);
    return r.ok() ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "soq-lab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "soq-lab: error: " << e.what() << "\n";
    return 1;
  }
}

void add_common(CLI::App* s, RunConfig& c) {
  s->add_option("--N", c.N, "SO(N), N >= 3; omitted means the desk-scale range");
  s->add_option("--type", c.type, "B or D, used with --n instead of --N");
  s->add_option("--n", c.n, "rank");
  s->add_option("--k", c.k, "representation or case index");
  s->add_option("--q", c.qs, "deformation parameters in (0,1)")->delimiter(',');
  s->add_option("--dim", c.d, "cut-off dimension per Toeplitz factor");
  s->add_option("--margin", c.m, "interior margin excluded from residuals");
  s->add_option("--tol", c.tol, "residual tolerance (default max(1e-10, 10 q^{2(dim-margin)}))");
  s->add_option("--samples", c.samples, "circle samples for winding numbers");
  s->add_option("--format", c.format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));
  s->add_option("--output,-o", c.output, "output file (default $SOQ_LAB_OUT/<command>.<ext> or stdout)");
  s->add_option("--seed", c.seed, "random seed");
}

}  // namespace

int cmd_check_frt(const RunConfig& cfg) { return execute(cfg, suite_frt); }
int cmd_irreps(const RunConfig& cfg) { return execute(cfg, suite_irreps); }
int cmd_branch(const RunConfig& cfg) { return execute(cfg, suite_branch); }
int cmd_hw(const RunConfig& cfg) { return execute(cfg, suite_hw); }
int cmd_ktheory(const RunConfig& cfg) { return execute(cfg, suite_ktheory); }
int cmd_qlimit(const RunConfig& cfg) { return execute(cfg, suite_qlimit); }
int cmd_all(const RunConfig& cfg) { return execute(cfg, suite_all); }

int run(int argc, char** argv) {
  CLI::App app{"Numerical checks for quantum SO(N) spheres and their Toeplitz representations", "soq-lab"};
  app.set_config("--config", "", "TOML or INI file with option values");
  app.require_subcommand(1);
  RunConfig cfg;

  auto* frt = app.add_subcommand("check-frt", "FRT relations, unitarity and involution of representations");
  add_common(frt, cfg);
  frt->add_option("--word", cfg.word, "Weyl word, e.g. s1s2s1");
  frt->add_option("--max-length", cfg.max_length, "longest omega_k word to include");
  frt->add_flag("--eta", cfg.eta, "also check eta_N of the longest-element representation of SO(N-2)");

  auto* irreps = app.add_subcommand("irreps", "vanishing pattern of the last row under omega_k");
  add_common(irreps, cfg);

  auto* branch = app.add_subcommand("branch", "SO(N) > SO(N-2) branching multiplicities");
  add_common(branch, cfg);
  branch->add_option("--alpha", cfg.alpha, "SO(N) highest weight, comma separated")->delimiter(',');
  branch->add_option("--beta", cfg.beta, "SO(N-2) highest weight, comma separated")->delimiter(',');
  branch->add_option("--rule", cfg.rule, "classical or as-printed");
  branch->add_option("--max-first", cfg.max_first, "largest alpha_1 in the exhaustive sweep");

  auto* hw = app.add_subcommand("hw", "highest weight vectors in the quotient algebra");
  add_common(hw, cfg);
  hw->add_option("--l1", cfg.l1, "lambda_1");
  hw->add_option("--l2", cfg.l2, "lambda_2");
  hw->add_option("--max-l1", cfg.max_l1, "largest lambda_1 in the sweep");

  auto* kt = app.add_subcommand("ktheory", "winding numbers and index map witnesses");
  add_common(kt, cfg);
  kt->add_option("--case", cfg.kcase, "A, B or D")->check(CLI::IsMember({"A", "B", "D"}));

  auto* ql = app.add_subcommand("qlimit", "q -> 0 identities and continuity in q");
  add_common(ql, cfg);
  ql->add_option("--identity", cfg.identity, "single identity from the catalog");
  ql->add_option("--family", cfg.family, "B or D4 continuity sweep")->check(CLI::IsMember({"B", "D4"}));
  ql->add_option("--L", cfg.L, "series cutoff");
  ql->add_flag("--printed", cfg.printed, "also report verbatim printed forms (informational)");
  ql->add_option("--grid", cfg.grid, "q grid for the continuity sweep")->delimiter(',');

  auto* all = app.add_subcommand("all", "every suite at desk scale");
  add_common(all, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (frt->parsed()) return cmd_check_frt(cfg);
  if (irreps->parsed()) return cmd_irreps(cfg);
  if (branch->parsed()) {
    if (branch->get_option("--format")->count() == 0) cfg.format = "csv";
    return cmd_branch(cfg);
  }
  if (hw->parsed()) return cmd_hw(cfg);
  if (kt->parsed()) return cmd_ktheory(cfg);
  if (ql->parsed()) return cmd_qlimit(cfg);
  return cmd_all(cfg);
}

}  // namespace soq::cli
