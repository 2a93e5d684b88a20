#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace soq::cli {

inline constexpr const char* kSchema = "soq-lab/1";
inline constexpr const char* kOutputEnv = "SOQ_LAB_OUT";

struct RunConfig {
  std::string command;
  int N = 0;  // 0: the desk-scale range of the command
  std::string type;  // "B" or "D" together with n, alternative to N
  int n = 0;
  int k = 0;
  std::vector<double> qs{0.3, 0.5, 0.7};
  int d = 16;
  int m = 6;
  std::optional<double> tol;
  int samples = 64;  // circle samples for norms and winding numbers
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 20240601;

  // check-frt
  std::string word;
  int max_length = 4;
  bool eta = false;
  // branch
  std::vector<int> alpha;
  std::vector<int> beta;
  std::string rule = "classical";
  int max_first = 6;
  int random_queries = 200;
  // hw
  std::optional<int> l1, l2;
  int max_l1 = 3;
  // ktheory
  std::string kcase;
  // qlimit
  std::string identity;
  std::string family;
  int L = 12;
  bool printed = false;
  std::vector<double> grid;
};

// Resolves N from (type, n) and checks value ranges. Throws std::invalid_argument.
void normalize(RunConfig& cfg);

struct Check {
  std::string suite;
  std::string name;
  std::string anchor;  // the claim a failure contradicts
  bool passed = false;
  bool informational = false;  // reported but not counted in the exit code
  nlohmann::ordered_json data;
};

struct Report {
  std::string command;
  nlohmann::ordered_json config;
  std::vector<Check> checks;
  std::vector<std::string> notices;

  bool ok() const;
  void append(const Report& other);
  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
  std::string to_markdown() const;
  std::string render(const std::string& format) const;
};

nlohmann::ordered_json config_json(const RunConfig& cfg);

Report suite_frt(const RunConfig& cfg);
Report suite_irreps(const RunConfig& cfg);
Report suite_branch(const RunConfig& cfg);
Report suite_hw(const RunConfig& cfg);
Report suite_ktheory(const RunConfig& cfg);
Report suite_qlimit(const RunConfig& cfg);
Report suite_all(const RunConfig& cfg);

// Runs the command's suite and writes the rendered report. Exit codes: 0 pass, 1 failed check, 2 bad config.
int cmd_check_frt(const RunConfig& cfg);
int cmd_irreps(const RunConfig& cfg);
int cmd_branch(const RunConfig& cfg);
int cmd_hw(const RunConfig& cfg);
int cmd_ktheory(const RunConfig& cfg);
int cmd_qlimit(const RunConfig& cfg);
int cmd_all(const RunConfig& cfg);

// Full command line entry point.
int run(int argc, char** argv);

}  // namespace soq::cli
