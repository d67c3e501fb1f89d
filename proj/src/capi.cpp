#include "svpath/svpath.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <map>
#include <string>

#include "svpath/error.hpp"
#include "svpath/experiments.hpp"
#include "svpath/flatness.hpp"
#include "svpath/instances.hpp"
#include "svpath/serialize.hpp"
#include "svpath/shadow.hpp"

struct svp_instance {
  svp::Instance inst;
};

struct svp_path {
  svp::ShadowPath path;
};

struct svp_report {
  svp::BoundReport report;
};

namespace {

thread_local std::string g_last_error;

svp_status to_status(svp::ErrorCode code) {
  using svp::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SVP_ERR_INVALID_ARGUMENT;
    case ErrorCode::ZeroVector: return SVP_ERR_ZERO_VECTOR;
    case ErrorCode::Singular: return SVP_ERR_SINGULAR;
    case ErrorCode::Overflow: return SVP_ERR_OVERFLOW;
    case ErrorCode::Infeasible: return SVP_ERR_INFEASIBLE;
    case ErrorCode::NotAVertex: return SVP_ERR_NOT_A_VERTEX;
    case ErrorCode::DegenerateVertex: return SVP_ERR_DEGENERATE_VERTEX;
    case ErrorCode::CapExceeded: return SVP_ERR_CAP_EXCEEDED;
    case ErrorCode::Disconnected: return SVP_ERR_DISCONNECTED;
    case ErrorCode::MappingFailed: return SVP_ERR_MAPPING_FAILED;
    case ErrorCode::DependentVectors: return SVP_ERR_DEPENDENT_VECTORS;
    case ErrorCode::NotOrthogonal: return SVP_ERR_NOT_ORTHOGONAL;
    case ErrorCode::VerticalEdge: return SVP_ERR_VERTICAL_EDGE;
    case ErrorCode::LeftwardEdge: return SVP_ERR_LEFTWARD_EDGE;
    case ErrorCode::StalledWalk: return SVP_ERR_STALLED_WALK;
    case ErrorCode::StepLimit: return SVP_ERR_STEP_LIMIT;
    case ErrorCode::UnboundedShadow: return SVP_ERR_UNBOUNDED_SHADOW;
    case ErrorCode::NonMonotoneSlopes: return SVP_ERR_NON_MONOTONE_SLOPES;
    case ErrorCode::RetriesExhausted: return SVP_ERR_RETRIES_EXHAUSTED;
    case ErrorCode::TooShort: return SVP_ERR_TOO_SHORT;
    case ErrorCode::MissingDelta: return SVP_ERR_MISSING_DELTA;
    case ErrorCode::UnboundedSample: return SVP_ERR_UNBOUNDED_SAMPLE;
    case ErrorCode::InfeasibleTotals: return SVP_ERR_INFEASIBLE_TOTALS;
    case ErrorCode::ParseError: return SVP_ERR_PARSE;
    case ErrorCode::SchemaError: return SVP_ERR_SCHEMA;
    case ErrorCode::IoError: return SVP_ERR_IO;
  }
  return SVP_ERR_INTERNAL;
}

template <typename Fn>
svp_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const svp::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SVP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SVP_ERR_INTERNAL;
  }
}

svp_status invalid(const char* what) {
  g_last_error = what;
  return SVP_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

svp::Vec to_vec(const double* p, std::size_t n) { return svp::Vec(p, p + n); }

}  // namespace

extern "C" {

const char* svp_last_error(void) { return g_last_error.c_str(); }

const char* svp_status_name(svp_status status) {
  switch (status) {
    case SVP_OK: return "OK";
    case SVP_ERR_INTERNAL: return "Internal";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(svp::ErrorCode::IoError); ++c) {
    auto code = static_cast<svp::ErrorCode>(c);
    if (to_status(code) == status) return svp::to_string(code).data();
  }
  return "Unknown";
}

const char* svp_version(void) { return "0.1.0"; }

void svp_string_free(char* s) { std::free(s); }

svp_status svp_instance_read(const char* path, svp_instance** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    *out = new svp_instance{svp::read_instance(path)};
    return SVP_OK;
  });
}

svp_status svp_instance_parse(const char* json_text, svp_instance** out) {
  if (!json_text || !out) return invalid("null argument");
  return guarded([&] {
    *out = new svp_instance{svp::parse_instance(json_text)};
    return SVP_OK;
  });
}

svp_status svp_instance_write(const svp_instance* inst, const char* path) {
  if (!inst || !path) return invalid("null argument");
  return guarded([&] {
    svp::write_instance(inst->inst, path);
    return SVP_OK;
  });
}

svp_status svp_instance_generate(const char* family, size_t n, size_t m, uint64_t seed,
                                 const char* const* param_names, const double* param_values, size_t n_params,
                                 svp_instance** out) {
  if (!family || !out || (n_params && (!param_names || !param_values))) return invalid("null argument");
  return guarded([&] {
    auto fam = svp::parse_family(family);
    if (!fam) svp::fail(svp::ErrorCode::InvalidArgument, std::string("unknown family '") + family + "'");
    svp::GeneratorSpec spec{*fam, n, m, seed, {}};
    for (size_t i = 0; i < n_params; ++i) spec.params[param_names[i]] = param_values[i];
    *out = new svp_instance{svp::generate(spec)};
    return SVP_OK;
  });
}

void svp_instance_free(svp_instance* inst) { delete inst; }

size_t svp_instance_rows(const svp_instance* inst) { return inst ? inst->inst.m() : 0; }

size_t svp_instance_dim(const svp_instance* inst) { return inst ? inst->inst.n() : 0; }

int svp_instance_integral(const svp_instance* inst) { return inst && inst->inst.integral() ? 1 : 0; }

svp_status svp_instance_endpoint(const svp_instance* inst, int which, double* buf, size_t len) {
  if (!inst || !buf) return invalid("null argument");
  const auto& x = which == 1 ? inst->inst.x1() : inst->inst.x2();
  if ((which != 1 && which != 2) || !x) return invalid("instance has no such endpoint");
  if (len < x->size()) return invalid("buffer too small");
  std::copy(x->begin(), x->end(), buf);
  return SVP_OK;
}

svp_status svp_find_path(const svp_instance* inst, const double* x1, const double* x2, size_t n, uint64_t seed,
                         svp_path** out) {
  if (!inst || !x1 || !x2 || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    if (n != inst->inst.n()) svp::fail(svp::ErrorCode::InvalidArgument, "endpoint dimension does not match instance");
    auto path = svp::find_path_report(inst->inst, to_vec(x1, n), to_vec(x2, n), seed);
    bool ok = path.completed();
    if (!ok) {
      g_last_error = "all attempts failed";
      if (!path.failures.empty()) g_last_error += "; last: " + path.failures.back();
    }
    *out = new svp_path{std::move(path)};
    return ok ? SVP_OK : SVP_ERR_RETRIES_EXHAUSTED;
  });
}

void svp_path_free(svp_path* path) { delete path; }

svp_path_status svp_path_get_status(const svp_path* path) {
  if (!path) return SVP_PATH_FAILED;
  switch (path->path.status) {
    case svp::PathStatus::Completed: return SVP_PATH_COMPLETED;
    case svp::PathStatus::PerturbedCompleted: return SVP_PATH_PERTURBED_COMPLETED;
    case svp::PathStatus::Failed: return SVP_PATH_FAILED;
  }
  return SVP_PATH_FAILED;
}

size_t svp_path_length(const svp_path* path) { return path ? path->path.length() : 0; }

int svp_path_retries(const svp_path* path) { return path ? path->path.retries : 0; }

size_t svp_path_slopes(const svp_path* path, double* buf, size_t cap) {
  if (!path) return 0;
  const auto& s = path->path.slopes;
  if (buf)
    for (size_t i = 0; i < std::min(cap, s.size()); ++i) buf[i] = s[i];
  return s.size();
}

svp_status svp_path_to_json(const svp_path* path, char** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    *out = copy_string(svp::path_to_json(path->path));
    return SVP_OK;
  });
}

svp_status svp_path_failures(const svp_path* path, char** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    std::string joined;
    for (const auto& f : path->path.failures) joined += f + "\n";
    *out = copy_string(joined);
    return SVP_OK;
  });
}

svp_status svp_delta(const svp_instance* inst, int compute_subdet, svp_delta_info* info, size_t* argmin_basis,
                     size_t basis_len) {
  if (!inst || !info) return invalid("null argument");
  return guarded([&] {
    *info = svp_delta_info{};
    svp::FlatnessReport flat;
    if (compute_subdet) {
      auto cert = svp::certify_delta_Delta(inst->inst);
      flat = cert.flatness;
      info->has_subdet = 1;
      info->Delta = cert.subdet.Delta;
      info->Delta1 = cert.subdet.Delta1;
      info->Delta_n_minus_1 = cert.subdet.Delta_n_minus_1;
      info->bound_on_inv_delta = cert.subdet.bound_on_inv_delta;
      info->certificate_holds = cert.holds ? 1 : 0;
      info->certificate_slack = cert.slack;
    } else {
      flat = svp::delta_A(inst->inst);
    }
    info->delta = flat.delta;
    info->n_bases_checked = flat.n_bases_checked;
    if (argmin_basis)
      for (size_t i = 0; i < std::min(basis_len, flat.argmin_basis.size()); ++i) argmin_basis[i] = flat.argmin_basis[i];
    return SVP_OK;
  });
}

svp_status svp_experiment_run(const svp_instance* inst, const double* x1, const double* x2, size_t n, size_t trials,
                              uint64_t seed, unsigned threads, svp_report** out) {
  if (!inst || !x1 || !x2 || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    if (n != inst->inst.n()) svp::fail(svp::ErrorCode::InvalidArgument, "endpoint dimension does not match instance");
    svp::BatchOptions opts;
    opts.threads = threads;
    *out = new svp_report{svp::run_experiment(inst->inst, to_vec(x1, n), to_vec(x2, n), trials, seed, opts)};
    return SVP_OK;
  });
}

void svp_report_free(svp_report* report) { delete report; }

int svp_report_passed(const svp_report* report) { return report && report->report.passed ? 1 : 0; }

int svp_report_ratio(const svp_report* report, double* ratio) {
  if (!report || !ratio || !report->report.ratio_mean_to_bound) return 0;
  *ratio = *report->report.ratio_mean_to_bound;
  return 1;
}

double svp_report_bound(const svp_report* report) { return report ? report->report.bound_8mn2_over_delta2 : 0.0; }

svp_status svp_report_emit(const svp_report* report, svp_report_format format, char** out) {
  if (!report || !out) return invalid("null argument");
  return guarded([&] {
    *out = copy_string(svp::emit(report->report, format == SVP_FORMAT_CSV ? svp::ReportFormat::Csv
                                                                           : svp::ReportFormat::Json));
    return SVP_OK;
  });
}

}  // extern "C"
