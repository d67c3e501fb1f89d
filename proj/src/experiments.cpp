#include "svpath/experiments.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "svpath/combinatorics.hpp"
#include "svpath/error.hpp"
#include "svpath/serialize.hpp"

namespace svp {

namespace {

using ojson = nlohmann::ordered_json;

struct TrialOutcome {
  bool ok = false;
  int length = 0;
  int retries = 0;
  std::string failure;
};

TrialOutcome run_trial(const Instance& inst, const Vec& x1, const Vec& x2, std::uint64_t seed,
                       const ShadowOptions& opts) {
  TrialOutcome out;
  ShadowPath p = find_path_report(inst, x1, x2, seed, opts);
  if (p.completed()) {
    out.ok = true;
    out.length = static_cast<int>(p.length());
    out.retries = p.retries;
  } else {
    out.failure = "seed " + std::to_string(seed) + ": RetriesExhausted";
    if (!p.failures.empty()) out.failure += " (last: " + p.failures.back() + ")";
  }
  return out;
}

template <typename T>
ojson optional_json(const std::optional<T>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

}  // namespace

TrialBatch run_batch(const Instance& inst, const Vec& x1, const Vec& x2, std::size_t n_trials,
                     std::uint64_t base_seed, const BatchOptions& opts) {
  verify_vertex(inst, x1, opts.shadow.tol);
  verify_vertex(inst, x2, opts.shadow.tol);

  std::vector<TrialOutcome> outcomes(n_trials);
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n_trials)));
  if (workers <= 1) {
    for (std::size_t t = 0; t < n_trials; ++t) outcomes[t] = run_trial(inst, x1, x2, base_seed + t, opts.shadow);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < n_trials; t = next++)
          outcomes[t] = run_trial(inst, x1, x2, base_seed + t, opts.shadow);
      });
  }

  TrialBatch batch;
  batch.instance_id = inst.name();
  batch.n_trials = n_trials;
  batch.base_seed = base_seed;
  for (std::size_t t = 0; t < n_trials; ++t) {
    const auto& o = outcomes[t];
    if (o.ok) {
      batch.lengths.push_back(o.length);
      batch.retries.push_back(o.retries);
      batch.seeds.push_back(base_seed + t);
    } else {
      batch.failures.push_back(o.failure);
    }
  }
  return batch;
}

BoundReport bound_report(const TrialBatch& batch, const Instance& inst, std::optional<double> delta,
                         const std::optional<SubdetReport>& subdet, std::optional<int> bfs_lower) {
  if (!delta || !(*delta > 0.0)) fail(ErrorCode::MissingDelta, "bound report needs delta(A)");
  BoundReport r;
  r.instance_id = batch.instance_id;
  r.m = inst.m();
  r.n = inst.n();
  r.delta = *delta;
  r.trials = batch.n_trials;
  r.failures = batch.failures.size();
  r.bfs_lower = bfs_lower;
  const double m = static_cast<double>(r.m), n = static_cast<double>(r.n);
  r.bound_8mn2_over_delta2 = 8.0 * m * n * n / (r.delta * r.delta);
  if (subdet) {
    double inv = n * static_cast<double>(subdet->Delta1) * static_cast<double>(subdet->Delta_n_minus_1);
    r.subdet_bound = 8.0 * m * n * n * inv * inv;
  }
  const std::size_t k = batch.lengths.size();
  if (k > 0) {
    double sum = 0.0;
    for (int l : batch.lengths) sum += l;
    double mean = sum / static_cast<double>(k);
    double ss = 0.0;
    for (int l : batch.lengths) ss += (l - mean) * (l - mean);
    r.mean_length = mean;
    r.std_err = k > 1 ? std::sqrt(ss / static_cast<double>(k - 1) / static_cast<double>(k)) : 0.0;
    r.ratio_mean_to_bound = mean / r.bound_8mn2_over_delta2;
    r.passed = mean <= r.bound_8mn2_over_delta2;
  }
  return r;
}

BoundReport run_experiment(const Instance& inst, const Vec& x1, const Vec& x2, std::size_t n_trials,
                           std::uint64_t base_seed, const BatchOptions& opts, TrialBatch* batch_out) {
  TrialBatch batch = run_batch(inst, x1, x2, n_trials, base_seed, opts);
  FlatnessReport flat = delta_A(inst);
  std::optional<SubdetReport> subdet;
  if (inst.integral()) {
    try {
      subdet = subdet_report(*inst.int_A());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CapExceeded && e.code() != ErrorCode::Overflow) throw;
    }
  }
  std::optional<int> bfs;
  if (binomial(inst.m(), inst.n()) <= kDefaultEnumerationCap) {
    VertexGraph g = build_vertex_graph(inst);
    auto s = g.find(x1), t = g.find(x2);
    if (s && t) bfs = bfs_distance(g, *s, *t);
  }
  BoundReport r = bound_report(batch, inst, flat.delta, subdet, bfs);
  if (batch_out) *batch_out = std::move(batch);
  return r;
}

std::string emit(const BoundReport& r, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    auto opt = [](const auto& v) { return v ? format_number(static_cast<double>(*v)) : std::string(); };
    std::ostringstream os;
    os << kCsvHeader << '\n';
    os << r.instance_id << ',' << r.m << ',' << r.n << ',' << format_number(r.delta) << ',' << r.trials << ','
       << opt(r.mean_length) << ',' << opt(r.std_err) << ',' << format_number(r.bound_8mn2_over_delta2) << ','
       << opt(r.ratio_mean_to_bound) << ',' << (r.bfs_lower ? std::to_string(*r.bfs_lower) : std::string()) << '\n';
    return os.str();
  }
  ojson doc;
  doc["instance_id"] = r.instance_id;
  doc["m"] = r.m;
  doc["n"] = r.n;
  doc["delta"] = r.delta;
  doc["trials"] = r.trials;
  doc["failures"] = r.failures;
  doc["mean_length"] = optional_json(r.mean_length);
  doc["std_err"] = optional_json(r.std_err);
  doc["bound_8mn2_over_delta2"] = r.bound_8mn2_over_delta2;
  doc["bfs_lower"] = optional_json(r.bfs_lower);
  doc["ratio_mean_to_bound"] = optional_json(r.ratio_mean_to_bound);
  doc["subdet_bound"] = optional_json(r.subdet_bound);
  doc["passed"] = r.passed;
  return doc.dump(2) + "\n";
}

BoundReport parse_report_json(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("report: ") + e.what());
  }
  try {
    BoundReport r;
    r.instance_id = doc.at("instance_id").get<std::string>();
    r.m = doc.at("m").get<std::size_t>();
    r.n = doc.at("n").get<std::size_t>();
    r.delta = doc.at("delta").get<double>();
    r.trials = doc.at("trials").get<std::size_t>();
    r.failures = doc.at("failures").get<std::size_t>();
    auto opt_double = [&](const char* key) -> std::optional<double> {
      const auto& v = doc.at(key);
      return v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
    };
    r.mean_length = opt_double("mean_length");
    r.std_err = opt_double("std_err");
    r.bound_8mn2_over_delta2 = doc.at("bound_8mn2_over_delta2").get<double>();
    const auto& bfs = doc.at("bfs_lower");
    if (!bfs.is_null()) r.bfs_lower = bfs.get<int>();
    r.ratio_mean_to_bound = opt_double("ratio_mean_to_bound");
    r.subdet_bound = opt_double("subdet_bound");
    r.passed = doc.at("passed").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::SchemaError, std::string("report: ") + e.what());
  }
}

}  // namespace svp
