#include "svpath/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "svpath/combinatorics.hpp"
#include "svpath/error.hpp"
#include "svpath/random.hpp"

namespace svp {

namespace {

bool is_resample_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::VerticalEdge:
    case ErrorCode::LeftwardEdge:
    case ErrorCode::NonMonotoneSlopes:
    case ErrorCode::UnboundedShadow:
    case ErrorCode::StalledWalk:
    case ErrorCode::StepLimit:
    case ErrorCode::DegenerateVertex:
    case ErrorCode::Singular:
    case ErrorCode::Infeasible:
    case ErrorCode::MappingFailed:
      return true;
    default:
      return false;
  }
}

// Smallest slack above the tightness threshold over both endpoints.
double min_endpoint_slack(const Instance& inst, const Vec& x1, const Vec& x2, double tight) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec* x : {&x1, &x2})
    for (std::size_t j = 0; j < inst.m(); ++j) {
      double s = inst.b()[j] - dot(inst.A().row(j), *x);
      if (s > tight) best = std::min(best, s);
    }
  return std::isfinite(best) ? best : 1.0;
}

// Vertex of the perturbed instance generated by the degenerate vertex x: a
// non-degenerate perturbed vertex whose basis lies inside x's tight set,
// nearest to x.
VertexWithBasis representative(const Instance& perturbed, const Vec& x, const std::vector<std::size_t>& tight,
                               const Tolerances& tol) {
  const std::size_t n = perturbed.n();
  if (binomial(tight.size(), n) > kDefaultEnumerationCap)
    fail(ErrorCode::CapExceeded, "too many tight rows to search for a representative vertex");
  std::optional<VertexWithBasis> best;
  double best_d = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> basis(n);
  for_each_combination(tight.size(), n, [&](std::span<const std::size_t> idx) {
    for (std::size_t k = 0; k < n; ++k) basis[k] = tight[idx[k]];
    if (rank(perturbed.A().select_rows(basis)) < n) return true;
    Vec p = basis_point(perturbed, basis);
    if (max_violation(perturbed, p) > tol.tight) return true;
    if (tight_rows(perturbed, p, tol).size() != n) return true;
    double d = norm_inf(sub(p, x));
    if (d < best_d) {
      best_d = d;
      best = VertexWithBasis{std::move(p), basis, false};
    }
    return true;
  });
  if (!best) fail(ErrorCode::DegenerateVertex, "perturbation left no non-degenerate vertex near an endpoint");
  return *best;
}

}  // namespace

std::string_view to_string(PathStatus s) noexcept {
  switch (s) {
    case PathStatus::Completed: return "Completed";
    case PathStatus::PerturbedCompleted: return "Perturbed+Completed";
    case PathStatus::Failed: return "Failed";
  }
  return "Failed";
}

ObjectivePair sample_objectives(const Instance& inst, const VertexWithBasis& x1, const VertexWithBasis& x2,
                                std::uint64_t seed) {
  if (x1.degenerate || x2.degenerate)
    fail(ErrorCode::DegenerateVertex, "objectives need non-degenerate endpoints; perturb first");
  const std::size_t n = inst.n();
  if (x1.basis.size() != n || x2.basis.size() != n)
    fail(ErrorCode::InvalidArgument, "endpoint bases must have n rows");
  Rng rng(seed);
  ObjectivePair p;
  p.seed = seed;
  p.u_rows = x1.basis;
  p.v_rows = x2.basis;
  p.lambda.resize(n);
  p.mu.resize(n);
  for (double& l : p.lambda) l = rng.uniform_open_closed();
  for (double& u : p.mu) u = rng.uniform_open_closed();
  p.w1.assign(n, 0.0);
  p.w2.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    Vec u = normalize(inst.A().row(p.u_rows[k]));
    Vec v = normalize(inst.A().row(p.v_rows[k]));
    for (std::size_t j = 0; j < n; ++j) {
      p.w1[j] -= p.lambda[k] * u[j];
      p.w2[j] += p.mu[k] * v[j];
    }
  }
  return p;
}

std::array<double, 2> project(const ObjectivePair& pair, const Vec& x) {
  return {dot(pair.w1, x), dot(pair.w2, x)};
}

double slope(const ObjectivePair& pair, const Vec& from, const Vec& to, double eps_slope) {
  Vec d = sub(to, from);
  double run = dot(pair.w1, d);
  if (std::abs(run) <= eps_slope) fail(ErrorCode::VerticalEdge, "edge is vertical in the shadow plane");
  return dot(pair.w2, d) / run;
}

std::uint64_t default_max_steps(std::size_t m, std::size_t n) {
  return 10 * std::min<std::uint64_t>(binomial(m, n), 100'000);
}

ShadowPath walk(const Instance& inst, const VertexWithBasis& x1, const VertexWithBasis& x2,
                const ObjectivePair& pair, std::uint64_t max_steps, const ShadowOptions& opts) {
  const auto& tol = opts.tol;
  ShadowPath path;
  path.status = PathStatus::Completed;
  path.seed = pair.seed;
  path.vertices.push_back(x1);
  path.projections.push_back(project(pair, x1.x));

  auto arrived = [&](const VertexWithBasis& v) {
    return v.basis == x2.basis || norm_inf(sub(v.x, x2.x)) <= tol.dedup;
  };

  std::uint64_t steps = 0;
  while (!arrived(path.vertices.back())) {
    if (steps++ >= max_steps)
      fail(ErrorCode::StepLimit, "walk exceeded " + std::to_string(max_steps) + " pivots");
    const VertexWithBasis& cur = path.vertices.back();

    const EdgeDirection* chosen = nullptr;
    double best = 0.0;
    auto dirs = edge_directions(inst, cur);
    for (const auto& e : dirs) {
      double rise = dot(pair.w2, e.direction);
      if (rise <= opts.eps_slope) continue;
      double run = dot(pair.w1, e.direction);
      if (run <= opts.eps_slope) {
        if (std::abs(run) <= opts.eps_slope)
          fail(ErrorCode::VerticalEdge, "eta-improving edge leaving row " + std::to_string(e.leaving_row) +
                                            " is vertical in the shadow plane");
        fail(ErrorCode::LeftwardEdge, "eta-improving edge leaving row " + std::to_string(e.leaving_row) +
                                          " decreases xi");
      }
      double s = rise / run;
      if (!chosen || s > best) {
        chosen = &e;
        best = s;
      }
    }
    if (!chosen) fail(ErrorCode::StalledWalk, "no eta-improving edge before reaching the target");

    auto rs = ratio_step(inst, cur, chosen->direction, tol);
    if (!rs) fail(ErrorCode::UnboundedShadow, "shadow edge is unbounded");

    if (!path.slopes.empty() && !(path.slopes.back() - best > opts.monotone_tol)) {
      std::ostringstream os;
      os.precision(17);
      os << "slope " << best << " does not drop below " << path.slopes.back();
      fail(ErrorCode::NonMonotoneSlopes, os.str());
    }

    VertexWithBasis next;
    next.basis = cur.basis;
    std::replace(next.basis.begin(), next.basis.end(), chosen->leaving_row, rs->entering_row);
    std::sort(next.basis.begin(), next.basis.end());
    next.x = basis_point(inst, next.basis);
    auto tight = tight_rows(inst, next.x, tol);
    if (tight.size() != inst.n())
      fail(ErrorCode::DegenerateVertex, "walk reached a vertex with " + std::to_string(tight.size()) +
                                            " tight rows");

    path.pivot_trace.push_back({chosen->leaving_row, rs->entering_row, rs->step});
    path.slopes.push_back(best);
    path.projections.push_back(project(pair, next.x));
    path.vertices.push_back(std::move(next));
  }
  for (const auto& v : path.vertices) path.walk.push_back(v.x);
  return path;
}

ShadowPath find_path_report(const Instance& inst, const Vec& x1, const Vec& x2, std::uint64_t seed,
                            const ShadowOptions& opts) {
  const auto& tol = opts.tol;
  VertexWithBasis v1 = verify_vertex(inst, x1, tol);
  VertexWithBasis v2 = verify_vertex(inst, x2, tol);

  if (norm_inf(sub(x1, x2)) <= tol.dedup) {
    ShadowPath p;
    p.status = PathStatus::Completed;
    p.seed = seed;
    p.vertices.push_back(v1);
    p.walk.push_back(v1.x);
    return p;
  }

  const std::uint64_t max_steps = opts.max_steps.value_or(default_max_steps(inst.m(), inst.n()));
  bool perturbed_mode = v1.degenerate || v2.degenerate;
  std::vector<std::string> failures;

  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    try {
      ShadowPath path;
      if (!perturbed_mode) {
        ObjectivePair pair = sample_objectives(inst, v1, v2, s);
        path = walk(inst, v1, v2, pair, max_steps, opts);
      } else {
        double magnitude = opts.perturbation_factor * min_endpoint_slack(inst, x1, x2, tol.tight);
        auto [pinst, record] = perturb(inst, magnitude, s);
        VertexWithBasis r1 = representative(pinst, x1, tight_rows(inst, x1, tol), tol);
        VertexWithBasis r2 = representative(pinst, x2, tight_rows(inst, x2, tol), tol);
        ObjectivePair pair = sample_objectives(pinst, r1, r2, s);
        path = walk(pinst, r1, r2, pair, max_steps, opts);
        path.walk = collapse_path(inst, path.vertices, tol);
        if (norm_inf(sub(path.walk.front(), x1)) > tol.dedup || norm_inf(sub(path.walk.back(), x2)) > tol.dedup)
          fail(ErrorCode::MappingFailed, "collapsed walk does not join the requested endpoints");
        path.status = PathStatus::PerturbedCompleted;
        path.perturbation = std::move(record);
      }
      path.seed = s;
      path.retries = attempt;
      path.failures = std::move(failures);
      return path;
    } catch (const Error& e) {
      if (!is_resample_error(e.code())) throw;
      failures.push_back("seed " + std::to_string(s) + ": " + std::string(to_string(e.code())) + ": " + e.what());
      if (e.code() == ErrorCode::DegenerateVertex) perturbed_mode = true;
    }
  }

  ShadowPath failed;
  failed.status = PathStatus::Failed;
  failed.seed = seed;
  failed.retries = opts.max_attempts;
  failed.failures = std::move(failures);
  return failed;
}

ShadowPath find_path(const Instance& inst, const Vec& x1, const Vec& x2, std::uint64_t seed,
                     const ShadowOptions& opts) {
  ShadowPath p = find_path_report(inst, x1, x2, seed, opts);
  if (!p.completed()) {
    std::string msg = "all " + std::to_string(opts.max_attempts) + " attempts failed";
    for (const auto& f : p.failures) msg += "; " + f;
    fail(ErrorCode::RetriesExhausted, msg);
  }
  return p;
}

SlopeGapDiagnostic slope_gap(const ShadowPath& path) {
  if (path.slopes.size() < 2) fail(ErrorCode::TooShort, "slope gap needs at least two edges");
  SlopeGapDiagnostic d;
  d.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < path.slopes.size(); ++i) {
    double gap = path.slopes[i] - path.slopes[i + 1];
    if (gap < d.min_gap) {
      d.min_gap = gap;
      d.attained_at = {i, i + 1};
    }
  }
  return d;
}

}  // namespace svp
