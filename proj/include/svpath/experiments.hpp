#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svpath/flatness.hpp"
#include "svpath/polytope.hpp"
#include "svpath/shadow.hpp"

namespace svp {

struct TrialBatch {
  std::string instance_id;
  std::size_t n_trials = 0;
  std::uint64_t base_seed = 0;
  std::vector<int> lengths;                // successful trials, in seed order
  std::vector<int> retries;                // parallel to lengths
  std::vector<std::uint64_t> seeds;        // parallel to lengths
  std::vector<std::string> failures;       // "seed S: reason" for failed trials
};

struct BoundReport {
  std::string instance_id;
  std::size_t m = 0;
  std::size_t n = 0;
  double delta = 0.0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::optional<double> mean_length;
  std::optional<double> std_err;
  double bound_8mn2_over_delta2 = 0.0;
  std::optional<int> bfs_lower;
  std::optional<double> ratio_mean_to_bound;
  // 8mn^2 (n*Delta1*Delta_{n-1})^2, integral instances only.
  std::optional<double> subdet_bound;
  bool passed = true;  // mean <= bound (vacuous for an empty batch)
};

struct BatchOptions {
  ShadowOptions shadow;
  unsigned threads = 1;
};

/// Trial t runs find_path with seed base_seed + t. Results are collected in
/// seed order whatever the thread count.
TrialBatch run_batch(const Instance& inst, const Vec& x1, const Vec& x2, std::size_t n_trials,
                     std::uint64_t base_seed, const BatchOptions& opts = {});

/// Compares the batch mean against 8mn^2/delta^2. Throws MissingDelta when
/// delta is absent.
BoundReport bound_report(const TrialBatch& batch, const Instance& inst, std::optional<double> delta,
                         const std::optional<SubdetReport>& subdet = std::nullopt,
                         std::optional<int> bfs_lower = std::nullopt);

/// End-to-end: endpoints, delta by enumeration, sub-determinants for integral
/// instances and the BFS lower bound when they fit in the caps.
BoundReport run_experiment(const Instance& inst, const Vec& x1, const Vec& x2, std::size_t n_trials,
                           std::uint64_t base_seed, const BatchOptions& opts = {}, TrialBatch* batch_out = nullptr);

enum class ReportFormat { Json, Csv };

inline constexpr std::string_view kCsvHeader = "instance_id,m,n,delta,trials,mean,stderr,bound,ratio,bfs_lower";

std::string emit(const BoundReport& report, ReportFormat format);

/// Reads the JSON form produced by emit.
BoundReport parse_report_json(std::string_view text);

}  // namespace svp
