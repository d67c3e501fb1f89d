// svpath command-line tool. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 input or validation error, 2 algorithmic failure
// or bound violation, 3 resource cap exceeded.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svpath/svpath.h"

namespace {

enum Exit { kOk = 0, kInputError = 1, kAlgorithmFailure = 2, kCapExceeded = 3 };

struct InstanceDeleter {
  void operator()(svp_instance* p) const { svp_instance_free(p); }
};
struct PathDeleter {
  void operator()(svp_path* p) const { svp_path_free(p); }
};
struct ReportDeleter {
  void operator()(svp_report* p) const { svp_report_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { svp_string_free(p); }
};
using InstancePtr = std::unique_ptr<svp_instance, InstanceDeleter>;
using PathPtr = std::unique_ptr<svp_path, PathDeleter>;
using ReportPtr = std::unique_ptr<svp_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_code(svp_status s) {
  switch (s) {
    case SVP_OK: return kOk;
    case SVP_ERR_CAP_EXCEEDED: return kCapExceeded;
    case SVP_ERR_RETRIES_EXHAUSTED:
    case SVP_ERR_STEP_LIMIT:
    case SVP_ERR_UNBOUNDED_SHADOW:
    case SVP_ERR_NON_MONOTONE_SLOPES:
    case SVP_ERR_LEFTWARD_EDGE:
    case SVP_ERR_VERTICAL_EDGE:
    case SVP_ERR_STALLED_WALK:
    case SVP_ERR_MAPPING_FAILED:
    case SVP_ERR_DISCONNECTED:
    case SVP_ERR_INTERNAL:
      return kAlgorithmFailure;
    default:
      return kInputError;
  }
}

int report_error(svp_status s) {
  std::cerr << "error: " << svp_status_name(s) << ": " << svp_last_error() << "\n";
  return exit_code(s);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::optional<std::vector<double>> parse_csv(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(item.c_str(), &end);
    if (item.empty() || errno != 0 || *end != '\0') return std::nullopt;
    out.push_back(v);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return static_cast<bool>(out);
}

svp_status load(const std::string& file, InstancePtr& out) {
  svp_instance* raw = nullptr;
  svp_status s = svp_instance_read(file.c_str(), &raw);
  out.reset(raw);
  return s;
}

// Inline CSV overrides the instance file's endpoint.
std::optional<std::vector<double>> endpoint(const svp_instance* inst, int which, const std::string& inline_csv) {
  const size_t n = svp_instance_dim(inst);
  if (!inline_csv.empty()) {
    auto v = parse_csv(inline_csv);
    if (!v) {
      std::cerr << "error: --x" << which << " is not a comma-separated list of numbers\n";
      return std::nullopt;
    }
    if (v->size() != n) {
      std::cerr << "error: --x" << which << " has " << v->size() << " entries, instance dimension is " << n << "\n";
      return std::nullopt;
    }
    return v;
  }
  std::vector<double> v(n);
  if (svp_instance_endpoint(inst, which, v.data(), n) != SVP_OK) {
    std::cerr << "error: no x" << which << " given and the instance file has none\n";
    return std::nullopt;
  }
  return v;
}

int cmd_path(const std::string& file, const std::string& x1s, const std::string& x2s, uint64_t seed,
             const std::string& json_out) {
  InstancePtr inst;
  if (svp_status s = load(file, inst); s != SVP_OK) return report_error(s);
  auto x1 = endpoint(inst.get(), 1, x1s);
  auto x2 = endpoint(inst.get(), 2, x2s);
  if (!x1 || !x2) return kInputError;

  svp_path* raw = nullptr;
  svp_status s = svp_find_path(inst.get(), x1->data(), x2->data(), x1->size(), seed, &raw);
  PathPtr path(raw);
  if (!path) return report_error(s);

  const char* status_name = svp_path_get_status(path.get()) == SVP_PATH_COMPLETED          ? "Completed"
                            : svp_path_get_status(path.get()) == SVP_PATH_PERTURBED_COMPLETED ? "Perturbed+Completed"
                                                                                              : "Failed";
  std::cout << "status=" << status_name << "\n";
  std::cout << "length=" << svp_path_length(path.get()) << "\n";
  std::cout << "retries=" << svp_path_retries(path.get()) << "\n";
  std::vector<double> slopes(svp_path_slopes(path.get(), nullptr, 0));
  svp_path_slopes(path.get(), slopes.data(), slopes.size());
  std::cout << "slopes=";
  for (size_t i = 0; i < slopes.size(); ++i) std::cout << (i ? "," : "") << fmt(slopes[i]);
  std::cout << "\n";

  if (!json_out.empty()) {
    char* text = nullptr;
    if (svp_status js = svp_path_to_json(path.get(), &text); js != SVP_OK) return report_error(js);
    StringPtr owned(text);
    if (!write_file(json_out, owned.get())) {
      std::cerr << "error: cannot write " << json_out << "\n";
      return kInputError;
    }
  }
  if (s != SVP_OK) {
    std::cerr << "error: " << svp_last_error() << "\n";
    return kAlgorithmFailure;
  }
  return kOk;
}

int print_delta(const std::string& file, bool bound_check) {
  InstancePtr inst;
  if (svp_status s = load(file, inst); s != SVP_OK) return report_error(s);
  const size_t n = svp_instance_dim(inst.get()), m = svp_instance_rows(inst.get());
  const bool integral = svp_instance_integral(inst.get()) != 0;

  svp_delta_info info{};
  std::vector<size_t> basis(n);
  if (svp_status s = svp_delta(inst.get(), integral ? 1 : 0, &info, basis.data(), n); s != SVP_OK)
    return report_error(s);

  std::cout << "delta=" << fmt(info.delta) << "\n";
  std::cout << "argmin_basis=";
  for (size_t i = 0; i < n; ++i) std::cout << (i ? "," : "") << basis[i];
  std::cout << "\nbases_checked=" << info.n_bases_checked << "\n";
  if (info.has_subdet) {
    std::cout << "Delta=" << info.Delta << "\n"
              << "Delta1=" << info.Delta1 << "\n"
              << "Delta_n_minus_1=" << info.Delta_n_minus_1 << "\n"
              << "inv_delta=" << fmt(1.0 / info.delta) << "\n"
              << "n_Delta1_Delta_n_minus_1=" << fmt(info.bound_on_inv_delta) << "\n"
              << "certificate=" << (info.certificate_holds ? "holds" : "VIOLATED") << "\n"
              << "certificate_slack=" << fmt(info.certificate_slack) << "\n";
  } else {
    std::cout << "certificate=n/a (A is not integral)\n";
  }
  if (bound_check) {
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    std::cout << "path_bound_8mn2_over_delta2=" << fmt(8.0 * md * nd * nd / (info.delta * info.delta)) << "\n";
    if (info.has_subdet) {
      double inv = info.bound_on_inv_delta;
      std::cout << "path_bound_subdet=" << fmt(8.0 * md * nd * nd * inv * inv) << "\n";
    }
  }
  if (info.has_subdet && !info.certificate_holds) return kAlgorithmFailure;
  return kOk;
}

int cmd_generate(const std::string& family, size_t n, size_t m, uint64_t seed, const std::string& out,
                 const std::vector<std::string>& params) {
  std::vector<std::string> names;
  std::vector<double> values;
  for (const auto& p : params) {
    auto eq = p.find('=');
    char* end = nullptr;
    double v = eq == std::string::npos ? 0.0 : std::strtod(p.c_str() + eq + 1, &end);
    if (eq == std::string::npos || eq == 0 || !end || *end != '\0') {
      std::cerr << "error: --param expects name=value, got '" << p << "'\n";
      return kInputError;
    }
    names.push_back(p.substr(0, eq));
    values.push_back(v);
  }
  std::vector<const char*> cnames;
  for (const auto& s : names) cnames.push_back(s.c_str());

  svp_instance* raw = nullptr;
  svp_status s = svp_instance_generate(family.c_str(), n, m, seed, cnames.data(), values.data(), names.size(), &raw);
  InstancePtr inst(raw);
  if (s != SVP_OK) return report_error(s);
  if (svp_status ws = svp_instance_write(inst.get(), out.c_str()); ws != SVP_OK) return report_error(ws);
  std::cout << "wrote " << out << " (m=" << svp_instance_rows(inst.get()) << ", n=" << svp_instance_dim(inst.get())
            << ")\n";
  return kOk;
}

int cmd_experiment(const std::string& file, size_t trials, uint64_t seed, const std::string& out_dir,
                   const std::string& x1s, const std::string& x2s, unsigned threads) {
  InstancePtr inst;
  if (svp_status s = load(file, inst); s != SVP_OK) return report_error(s);
  auto x1 = endpoint(inst.get(), 1, x1s);
  auto x2 = endpoint(inst.get(), 2, x2s);
  if (!x1 || !x2) return kInputError;

  svp_report* raw = nullptr;
  svp_status s = svp_experiment_run(inst.get(), x1->data(), x2->data(), x1->size(), trials, seed, threads, &raw);
  ReportPtr report(raw);
  if (s != SVP_OK) return report_error(s);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << out_dir << ": " << ec.message() << "\n";
    return kInputError;
  }
  for (auto [format, name] : {std::pair{SVP_FORMAT_CSV, "report.csv"}, std::pair{SVP_FORMAT_JSON, "report.json"}}) {
    char* text = nullptr;
    if (svp_status es = svp_report_emit(report.get(), format, &text); es != SVP_OK) return report_error(es);
    StringPtr owned(text);
    auto path = std::filesystem::path(out_dir) / name;
    if (!write_file(path, owned.get())) {
      std::cerr << "error: cannot write " << path << "\n";
      return kInputError;
    }
  }

  double ratio = 0.0;
  std::cout << "bound_8mn2_over_delta2=" << fmt(svp_report_bound(report.get())) << "\n";
  if (svp_report_ratio(report.get(), &ratio))
    std::cout << "ratio_mean_to_bound=" << fmt(ratio) << "\n";
  else
    std::cout << "ratio_mean_to_bound=\n";
  const bool passed = svp_report_passed(report.get()) != 0;
  std::cout << "bound_check=" << (passed ? "pass" : "FAIL") << "\n";
  return passed ? kOk : kAlgorithmFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shadow vertex paths between polytope vertices, flatness and sub-determinant audits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", svp_version());

  std::string instance, x1, x2, json_out, out, family;
  uint64_t seed = 0;
  size_t trials = 100, n = 0, m = 0;
  unsigned threads = 1;
  std::vector<std::string> params;

  auto* path = app.add_subcommand("path", "Find a shadow vertex path between two vertices");
  path->add_option("--instance", instance, "Instance JSON file")->required();
  path->add_option("--x1", x1, "Start vertex as comma-separated values");
  path->add_option("--x2", x2, "Target vertex as comma-separated values");
  path->add_option("--seed", seed, "Random seed")->required();
  path->add_option("--json", json_out, "Write the path as JSON to this file");

  auto* delta = app.add_subcommand("delta", "Compute delta(A) and, for integral A, the sub-determinant table");
  delta->add_option("--instance", instance, "Instance JSON file")->required();

  auto* bound = app.add_subcommand("bound-check", "delta, sub-determinant certificate and path-length bounds");
  bound->add_option("--instance", instance, "Instance JSON file")->required();

  auto* gen = app.add_subcommand("generate", "Write a generated instance file");
  gen->add_option("--family", family, "hypercube | simplex | random-sphere | transportation | rotated | cut-cube")
      ->required();
  gen->add_option("--n", n, "Dimension (transportation: number of supplies)")->required();
  gen->add_option("--m", m, "Rows (random-sphere) or number of demands (transportation)");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", out, "Output file")->required();
  gen->add_option("--param", params, "Extra family parameter name=value (cut-cube: cut)");

  auto* exp = app.add_subcommand("experiment", "Monte Carlo path lengths against the 8mn^2/delta^2 bound");
  exp->add_option("--instance", instance, "Instance JSON file")->required();
  exp->add_option("--trials", trials, "Number of trials")->required();
  exp->add_option("--seed", seed, "Base seed; trial t uses seed + t")->required();
  exp->add_option("--out", out, "Output directory for report.csv and report.json")->required();
  exp->add_option("--x1", x1, "Start vertex as comma-separated values");
  exp->add_option("--x2", x2, "Target vertex as comma-separated values");
  exp->add_option("--threads", threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (*path) return cmd_path(instance, x1, x2, seed, json_out);
  if (*delta) return print_delta(instance, false);
  if (*bound) return print_delta(instance, true);
  if (*gen) return cmd_generate(family, n, m, seed, out, params);
  if (*exp) return cmd_experiment(instance, trials, seed, out, x1, x2, threads);
  return kInputError;
}
