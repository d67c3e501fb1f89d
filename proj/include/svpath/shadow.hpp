#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "svpath/linalg.hpp"
#include "svpath/polytope.hpp"

namespace svp {

/// The random weights and the two objectives built from them. x1 uniquely
/// minimizes w1 over P, x2 uniquely maximizes w2.
struct ObjectivePair {
  Vec lambda;
  Vec mu;
  Vec w1;
  Vec w2;
  std::vector<std::size_t> u_rows;
  std::vector<std::size_t> v_rows;
  std::uint64_t seed = 0;
};

enum class PathStatus { Completed, PerturbedCompleted, Failed };

std::string_view to_string(PathStatus s) noexcept;

struct PivotStep {
  std::size_t leaving_row;
  std::size_t entering_row;
  double step;
};

struct ShadowPath {
  std::vector<VertexWithBasis> vertices;
  Vec slopes;
  std::vector<std::array<double, 2>> projections;
  std::vector<PivotStep> pivot_trace;
  PathStatus status = PathStatus::Failed;
  std::uint64_t seed = 0;
  int retries = 0;
  std::vector<std::string> failures;  // one entry per discarded attempt
  std::optional<PerturbationRecord> perturbation;
  // The path mapped onto the input polytope. Equal to the vertex points unless
  // the walk ran on a perturbed copy.
  std::vector<Vec> walk;

  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
  bool completed() const noexcept { return status != PathStatus::Failed; }
};

struct SlopeGapDiagnostic {
  double min_gap = 0.0;
  std::pair<std::size_t, std::size_t> attained_at;
};

struct ShadowOptions {
  Tolerances tol;
  double eps_slope = 1e-12;      // |w.d| at or below this is treated as zero
  double monotone_tol = 1e-12;   // consecutive slopes must drop by more than this
  int max_attempts = 16;
  std::optional<std::uint64_t> max_steps;  // default_max_steps when empty
  double perturbation_factor = 1e-7;       // times the smallest endpoint slack
};

ObjectivePair sample_objectives(const Instance& inst, const VertexWithBasis& x1, const VertexWithBasis& x2,
                                std::uint64_t seed);

std::array<double, 2> project(const ObjectivePair& pair, const Vec& x);

double slope(const ObjectivePair& pair, const Vec& from, const Vec& to, double eps_slope = 1e-12);

std::uint64_t default_max_steps(std::size_t m, std::size_t n);

/// Shadow vertex pivot walk from x1 to x2: at each vertex follow the
/// eta-improving edge of largest slope.
ShadowPath walk(const Instance& inst, const VertexWithBasis& x1, const VertexWithBasis& x2,
                const ObjectivePair& pair, std::uint64_t max_steps, const ShadowOptions& opts = {});

/// Full driver with endpoint verification, perturbation of degenerate
/// instances and resampling. Never throws for exhausted retries; the result
/// then has status Failed and lists every attempt's reason.
ShadowPath find_path_report(const Instance& inst, const Vec& x1, const Vec& x2, std::uint64_t seed,
                            const ShadowOptions& opts = {});

/// As find_path_report, but throws RetriesExhausted on failure.
ShadowPath find_path(const Instance& inst, const Vec& x1, const Vec& x2, std::uint64_t seed,
                     const ShadowOptions& opts = {});

SlopeGapDiagnostic slope_gap(const ShadowPath& path);

}  // namespace svp
