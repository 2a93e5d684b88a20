#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "soq/weyl.hpp"
#include "soq_cli/cli.hpp"

namespace soq::cli {

using nlohmann::ordered_json;

void normalize(RunConfig& cfg) {
  if (!cfg.type.empty()) {
    if (cfg.type != "B" && cfg.type != "D") throw std::invalid_argument("--type must be B or D");
    if (cfg.n < 1) throw std::invalid_argument("--type needs --n >= 1");
    const int N = N_from(cfg.type == "B" ? LieType::B : LieType::D, cfg.n);
    if (cfg.N != 0 && cfg.N != N) throw std::invalid_argument("--N disagrees with --type/--n");
    cfg.N = N;
  }
  if (cfg.N != 0 && cfg.N < 3) throw std::invalid_argument("--N must be >= 3");
  if (cfg.qs.empty()) throw std::invalid_argument("--q needs at least one value");
  for (double q : cfg.qs)
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("--q values must lie in (0,1)");
  if (cfg.d < 4) throw std::invalid_argument("--dim must be >= 4");
  if (cfg.m < 0 || cfg.m >= cfg.d) throw std::invalid_argument("--margin must lie in [0, dim)");
  if (cfg.samples < 4) throw std::invalid_argument("--samples must be >= 4");
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "md")
    throw std::invalid_argument("--format must be json, csv or md");
  if (cfg.L < 0) throw std::invalid_argument("--L must be >= 0");
  if (cfg.max_length < 0) throw std::invalid_argument("--max-length must be >= 0");
  if (cfg.max_first < 0 || cfg.max_l1 < 0) throw std::invalid_argument("range bounds must be >= 0");
  if (cfg.random_queries < 0) throw std::invalid_argument("--random must be >= 0");
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["N"] = cfg.N;
  j["k"] = cfg.k;
  j["q"] = cfg.qs;
  j["d"] = cfg.d;
  j["m"] = cfg.m;
  if (cfg.tol) j["tol"] = *cfg.tol;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  return j;
}

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || c.informational; });
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  notices.insert(notices.end(), other.notices.begin(), other.notices.end());
}

ordered_json Report::to_json() const {
  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["config"] = config;
  j["passed"] = ok();
  long failed = 0;
  for (const auto& c : checks) failed += !c.passed && !c.informational;
  j["summary"] = {{"checks", checks.size()}, {"failed", failed}};
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["suite"] = c.suite;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["passed"] = c.passed;
    if (c.informational) e["informational"] = true;
    for (const auto& [key, v] : c.data.items()) e[key] = v;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  j["notices"] = notices;
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char ch : s) r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return r + "\"";
}

std::string cell(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string r;
    for (std::size_t i = 0; i < v.size(); ++i) r += (i ? " " : "") + cell(v[i]);
    return r;
  }
  return v.dump();
}

}  // namespace

std::string Report::to_csv() const {
  std::vector<std::string> keys;
  for (const auto& c : checks)
    for (const auto& [key, v] : c.data.items())
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  std::ostringstream os;
  os << "suite,name,passed,anchor";
  for (const auto& k : keys) os << ',' << csv_field(k);
  os << '\n';
  for (const auto& c : checks) {
    os << csv_field(c.suite) << ',' << csv_field(c.name) << ',' << (c.passed ? "true" : "false") << ','
       << csv_field(c.anchor);
    for (const auto& k : keys) {
      os << ',';
      if (c.data.contains(k)) os << csv_field(cell(c.data[k]));
    }
    os << '\n';
  }
  return os.str();
}

std::string Report::to_markdown() const {
  std::ostringstream os;
  os << "# soq-lab " << command << "\n\n";
  os << "schema `" << kSchema << "`, " << checks.size() << " checks, " << (ok() ? "all passed" : "FAILURES") << "\n\n";
  os << "| suite | check | result | claim | data |\n|---|---|---|---|---|\n";
  for (const auto& c : checks) {
    std::string data = c.data.dump();
    std::replace(data.begin(), data.end(), '|', '/');
    os << "| " << c.suite << " | " << c.name << " | "
       << (c.passed ? "pass" : (c.informational ? "info" : "FAIL")) << " | " << c.anchor << " | `" << data
       << "` |\n";
  }
  if (!notices.empty()) {
    os << "\n";
    for (const auto& n : notices) os << "- " << n << "\n";
  }
  return os.str();
}

std::string Report::render(const std::string& format) const {
  if (format == "csv") return to_csv();
  if (format == "md") return to_markdown();
  return to_json().dump(2) + "\n";
}

}  // namespace soq::cli
