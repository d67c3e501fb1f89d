#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "svpath/linalg.hpp"

namespace svp {

/// Thresholds used by all polytope operations. Rows are unit-normalized, so
/// the absolute tolerances are meaningful.
struct Tolerances {
  double tight = 1e-9;       // |a_i.x - b_i| below this counts as tight
  double direction = 1e-12;  // ratio-test denominators
  double dedup = 1e-7;       // vertex identity in point space (inf-norm)
};

/// P = {x : Ax <= b}. The stored A has unit rows with b rescaled to match; the
/// rows as given at ingestion are kept for exact integer work and for writing.
class Instance {
 public:
  Instance() = default;

  /// Canonicalizes rows to unit norm. `integral` asks for the exact integer
  /// copy of `raw_a`; it is an error if any entry is not an integer.
  static Instance from_rows(std::string name, Mat raw_a, Vec raw_b, bool integral);

  const std::string& name() const noexcept { return name_; }
  std::size_t m() const noexcept { return a_.rows(); }
  std::size_t n() const noexcept { return a_.cols(); }

  const Mat& A() const noexcept { return a_; }
  const Vec& b() const noexcept { return b_; }
  const Mat& raw_A() const noexcept { return raw_a_; }
  const Vec& raw_b() const noexcept { return raw_b_; }
  const Vec& row_norms() const noexcept { return row_norms_; }
  bool integral() const noexcept { return int_a_.has_value(); }
  const std::optional<IntMat>& int_A() const noexcept { return int_a_; }

  const std::optional<Vec>& x1() const noexcept { return x1_; }
  const std::optional<Vec>& x2() const noexcept { return x2_; }

  /// Copy with a new right-hand side given in the normalized row space.
  Instance with_normalized_b(Vec b) const;
  Instance with_endpoints(std::optional<Vec> x1, std::optional<Vec> x2) const;
  Instance with_name(std::string name) const;

 private:
  std::string name_;
  Mat a_;
  Vec b_;
  Mat raw_a_;
  Vec raw_b_;
  Vec row_norms_;
  std::optional<IntMat> int_a_;
  std::optional<Vec> x1_;
  std::optional<Vec> x2_;
};

/// A point together with n linearly independent tight rows (sorted).
struct VertexWithBasis {
  Vec x;
  std::vector<std::size_t> basis;
  bool degenerate = false;  // more than n rows tight
};

struct EdgeDirection {
  std::size_t leaving_row;
  Vec direction;
};

struct RatioStep {
  std::size_t entering_row;
  double step;
};

struct PerturbationRecord {
  Vec original_b;
  Vec perturbed_b;
  double magnitude = 0.0;
  std::uint64_t seed = 0;
};

/// Indices i with |a_i.x - b_i| <= tight. Throws Infeasible naming the first
/// violated row.
std::vector<std::size_t> tight_rows(const Instance& inst, const Vec& x, const Tolerances& tol = {});

/// Largest violation max_j (a_j.x - b_j), or a negative number when x is
/// strictly interior.
double max_violation(const Instance& inst, const Vec& x);

VertexWithBasis verify_vertex(const Instance& inst, const Vec& x, const Tolerances& tol = {});

/// Solves A_basis x = b_basis. No feasibility check.
Vec basis_point(const Instance& inst, const std::vector<std::size_t>& basis);

/// One direction per basis row k, ordered by row index: A_basis d = -e_pos(k).
std::vector<EdgeDirection> edge_directions(const Instance& inst, const VertexWithBasis& v);

/// Ratio test along d. Empty when P is unbounded in that direction.
std::optional<RatioStep> ratio_step(const Instance& inst, const VertexWithBasis& v, const Vec& d,
                                    const Tolerances& tol = {});

inline constexpr std::uint64_t kDefaultEnumerationCap = 2'000'000;

std::vector<VertexWithBasis> enumerate_vertices(const Instance& inst,
                                                std::uint64_t cap = kDefaultEnumerationCap,
                                                const Tolerances& tol = {});

/// Vertex-edge graph. Two vertices are adjacent when the rows tight at both
/// have rank n-1, which also holds for degenerate vertices.
struct VertexGraph {
  std::vector<VertexWithBasis> vertices;
  std::vector<std::vector<std::size_t>> tight;
  std::vector<std::vector<std::size_t>> adjacency;

  std::optional<std::size_t> find(const Vec& x, double tol = 1e-7) const;
  std::size_t edge_count() const;
};

VertexGraph build_vertex_graph(const Instance& inst, std::uint64_t cap = kDefaultEnumerationCap,
                               const Tolerances& tol = {});

/// Hop distances from `source` to every vertex (-1 when unreachable).
std::vector<int> bfs_distances(const VertexGraph& g, std::size_t source);

int bfs_distance(const VertexGraph& g, std::size_t s, std::size_t t);
int bfs_distance(const Instance& inst, const VertexWithBasis& s, const VertexWithBasis& t);

/// True when no vertex has an unbounded edge. Requires a non-degenerate graph.
bool is_bounded(const Instance& inst, const VertexGraph& g);

/// b_i += xi_i with xi_i uniform on (0, magnitude].
std::pair<Instance, PerturbationRecord> perturb(const Instance& inst, double magnitude,
                                                std::uint64_t seed);

/// Maps every vertex of a path on a perturbed instance back onto `original`
/// by re-solving its basis with the original b, dropping consecutive repeats.
std::vector<Vec> collapse_path(const Instance& original,
                               const std::vector<VertexWithBasis>& perturbed_path,
                               const Tolerances& tol = {});

}  // namespace svp
