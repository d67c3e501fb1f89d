#include "svpath/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iterator>
#include <limits>
#include <sstream>

#include "svpath/combinatorics.hpp"
#include "svpath/error.hpp"
#include "svpath/random.hpp"

namespace svp {

namespace {

std::string row_list(const std::vector<std::size_t>& rows) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << rows[i];
  os << '}';
  return os.str();
}

}  // namespace

Instance Instance::from_rows(std::string name, Mat raw_a, Vec raw_b, bool integral) {
  const std::size_t m = raw_a.rows(), n = raw_a.cols();
  if (m == 0 || n == 0) fail(ErrorCode::InvalidArgument, "instance needs at least one row and column");
  if (m < n)
    fail(ErrorCode::InvalidArgument, "instance needs m >= n, got m=" + std::to_string(m) + " n=" +
                                         std::to_string(n));
  if (raw_b.size() != m)
    fail(ErrorCode::InvalidArgument, "b has " + std::to_string(raw_b.size()) + " entries, expected " +
                                         std::to_string(m));
  for (double v : raw_a.data())
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "A contains a non-finite entry");
  for (double v : raw_b)
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "b contains a non-finite entry");

  Instance inst;
  inst.name_ = std::move(name);
  inst.a_ = Mat(m, n);
  inst.b_.resize(m);
  inst.row_norms_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double len = norm(raw_a.row(i));
    if (!(len > 0.0)) fail(ErrorCode::InvalidArgument, "row " + std::to_string(i) + " of A is zero");
    inst.row_norms_[i] = len;
    for (std::size_t j = 0; j < n; ++j) inst.a_(i, j) = raw_a(i, j) / len;
    inst.b_[i] = raw_b[i] / len;
  }
  if (integral) {
    IntMat ia(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double v = raw_a(i, j);
        if (v != std::round(v) || std::abs(v) > 9.0e15)
          fail(ErrorCode::InvalidArgument, "integral instance has non-integer entry at (" +
                                               std::to_string(i) + "," + std::to_string(j) + ")");
        ia(i, j) = static_cast<std::int64_t>(v);
      }
    inst.int_a_ = std::move(ia);
  }
  inst.raw_a_ = std::move(raw_a);
  inst.raw_b_ = std::move(raw_b);
  return inst;
}

Instance Instance::with_normalized_b(Vec b) const {
  if (b.size() != m()) fail(ErrorCode::InvalidArgument, "right-hand side has wrong length");
  Instance copy = *this;
  copy.raw_b_.resize(m());
  for (std::size_t i = 0; i < m(); ++i) copy.raw_b_[i] = b[i] * row_norms_[i];
  copy.b_ = std::move(b);
  return copy;
}

Instance Instance::with_endpoints(std::optional<Vec> x1, std::optional<Vec> x2) const {
  for (const auto* x : {&x1, &x2})
    if (*x && x->value().size() != n()) fail(ErrorCode::InvalidArgument, "endpoint has wrong dimension");
  Instance copy = *this;
  copy.x1_ = std::move(x1);
  copy.x2_ = std::move(x2);
  return copy;
}

Instance Instance::with_name(std::string name) const {
  Instance copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

double max_violation(const Instance& inst, const Vec& x) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < inst.m(); ++j) worst = std::max(worst, dot(inst.A().row(j), x) - inst.b()[j]);
  return worst;
}

std::vector<std::size_t> tight_rows(const Instance& inst, const Vec& x, const Tolerances& tol) {
  if (x.size() != inst.n())
    fail(ErrorCode::InvalidArgument, "point has dimension " + std::to_string(x.size()) + ", expected " +
                                         std::to_string(inst.n()));
  std::vector<std::size_t> tight;
  for (std::size_t j = 0; j < inst.m(); ++j) {
    double slack = inst.b()[j] - dot(inst.A().row(j), x);
    if (slack < -tol.tight) {
      std::ostringstream os;
      os << "point violates row " << j << " by " << -slack;
      fail(ErrorCode::Infeasible, os.str());
    }
    if (slack <= tol.tight) tight.push_back(j);
  }
  return tight;
}

VertexWithBasis verify_vertex(const Instance& inst, const Vec& x, const Tolerances& tol) {
  auto tight = tight_rows(inst, x, tol);
  const std::size_t n = inst.n();
  if (tight.size() < n)
    fail(ErrorCode::NotAVertex, "only " + std::to_string(tight.size()) + " rows are tight, need " +
                                    std::to_string(n));
  // Greedy rank-increasing selection in row order.
  std::vector<std::size_t> basis;
  for (std::size_t r : tight) {
    basis.push_back(r);
    if (rank(inst.A().select_rows(basis)) < basis.size()) basis.pop_back();
    if (basis.size() == n) break;
  }
  if (basis.size() < n)
    fail(ErrorCode::NotAVertex, "tight rows " + row_list(tight) + " have rank " +
                                    std::to_string(basis.size()) + " < " + std::to_string(n));
  return {x, basis, tight.size() > n};
}

Vec basis_point(const Instance& inst, const std::vector<std::size_t>& basis) {
  Vec rhs(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) rhs[k] = inst.b()[basis[k]];
  return solve(inst.A().select_rows(basis), rhs);
}

std::vector<EdgeDirection> edge_directions(const Instance& inst, const VertexWithBasis& v) {
  if (v.basis.size() != inst.n()) fail(ErrorCode::InvalidArgument, "basis must have n rows");
  Mat inv = inverse(inst.A().select_rows(v.basis));
  std::vector<EdgeDirection> dirs;
  dirs.reserve(v.basis.size());
  for (std::size_t pos = 0; pos < v.basis.size(); ++pos) {
    Vec d = inv.column(pos);
    for (double& c : d) c = -c;
    dirs.push_back({v.basis[pos], std::move(d)});
  }
  return dirs;
}

std::optional<RatioStep> ratio_step(const Instance& inst, const VertexWithBasis& v, const Vec& d,
                                    const Tolerances& tol) {
  std::optional<RatioStep> best;
  for (std::size_t j = 0; j < inst.m(); ++j) {
    if (std::binary_search(v.basis.begin(), v.basis.end(), j)) continue;
    double rate = dot(inst.A().row(j), d);
    if (rate <= tol.direction) continue;
    double step = (inst.b()[j] - dot(inst.A().row(j), v.x)) / rate;
    if (!best || step < best->step) best = RatioStep{j, step};
  }
  if (best) best->step = std::max(best->step, 0.0);
  return best;
}

std::vector<VertexWithBasis> enumerate_vertices(const Instance& inst, std::uint64_t cap,
                                                const Tolerances& tol) {
  const std::size_t m = inst.m(), n = inst.n();
  const std::uint64_t count = binomial(m, n);
  if (count > cap)
    fail(ErrorCode::CapExceeded, "vertex enumeration needs C(" + std::to_string(m) + "," +
                                     std::to_string(n) + ") bases, cap is " + std::to_string(cap));
  std::vector<VertexWithBasis> out;
  std::vector<std::size_t> basis(n);
  for_each_combination(m, n, [&](std::span<const std::size_t> idx) {
    basis.assign(idx.begin(), idx.end());
    Mat rows = inst.A().select_rows(basis);
    if (rank(rows) < n) return true;
    Vec x;
    try {
      x = basis_point(inst, basis);
    } catch (const Error&) {
      return true;
    }
    if (max_violation(inst, x) > tol.tight) return true;
    for (const auto& v : out)
      if (norm_inf(sub(v.x, x)) <= tol.dedup) return true;
    out.push_back(verify_vertex(inst, x, tol));
    return true;
  });
  return out;
}

std::optional<std::size_t> VertexGraph::find(const Vec& x, double tol) const {
  std::optional<std::size_t> best;
  double best_d = tol;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    double d = norm_inf(sub(vertices[i].x, x));
    if (d <= best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::size_t VertexGraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& nb : adjacency) e += nb.size();
  return e / 2;
}

VertexGraph build_vertex_graph(const Instance& inst, std::uint64_t cap, const Tolerances& tol) {
  VertexGraph g;
  g.vertices = enumerate_vertices(inst, cap, tol);
  const std::size_t nv = g.vertices.size(), n = inst.n();
  g.tight.reserve(nv);
  for (const auto& v : g.vertices) g.tight.push_back(tight_rows(inst, v.x, tol));
  g.adjacency.assign(nv, {});
  std::vector<std::size_t> common;
  for (std::size_t u = 0; u < nv; ++u)
    for (std::size_t w = u + 1; w < nv; ++w) {
      common.clear();
      std::set_intersection(g.tight[u].begin(), g.tight[u].end(), g.tight[w].begin(), g.tight[w].end(),
                            std::back_inserter(common));
      if (common.size() + 1 < n) continue;
      if (n > 1 && rank(inst.A().select_rows(common)) != n - 1) continue;
      g.adjacency[u].push_back(w);
      g.adjacency[w].push_back(u);
    }
  return g;
}

std::vector<int> bfs_distances(const VertexGraph& g, std::size_t source) {
  std::vector<int> dist(g.vertices.size(), -1);
  if (source >= dist.size()) fail(ErrorCode::InvalidArgument, "bfs source out of range");
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t w : g.adjacency[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

int bfs_distance(const VertexGraph& g, std::size_t s, std::size_t t) {
  int d = bfs_distances(g, s).at(t);
  if (d < 0)
    fail(ErrorCode::Disconnected, "vertices " + std::to_string(s) + " and " + std::to_string(t) +
                                      " are not connected in the vertex graph");
  return d;
}

int bfs_distance(const Instance& inst, const VertexWithBasis& s, const VertexWithBasis& t) {
  VertexGraph g = build_vertex_graph(inst);
  auto si = g.find(s.x), ti = g.find(t.x);
  if (!si || !ti) fail(ErrorCode::NotAVertex, "bfs endpoint is not an enumerated vertex");
  return bfs_distance(g, *si, *ti);
}

bool is_bounded(const Instance& inst, const VertexGraph& g) {
  if (g.vertices.empty()) return false;
  for (const auto& v : g.vertices)
    for (const auto& e : edge_directions(inst, v))
      if (!ratio_step(inst, v, e.direction)) return false;
  return true;
}

std::pair<Instance, PerturbationRecord> perturb(const Instance& inst, double magnitude,
                                                std::uint64_t seed) {
  if (!(magnitude > 0.0) || !std::isfinite(magnitude))
    fail(ErrorCode::InvalidArgument, "perturbation magnitude must be positive");
  Rng rng(seed);
  Vec b = inst.b();
  for (double& bi : b) bi += magnitude * rng.uniform_open_closed();
  PerturbationRecord rec{inst.b(), b, magnitude, seed};
  return {inst.with_normalized_b(std::move(b)), std::move(rec)};
}

std::vector<Vec> collapse_path(const Instance& original, const std::vector<VertexWithBasis>& perturbed_path,
                               const Tolerances& tol) {
  std::vector<Vec> walk;
  for (const auto& v : perturbed_path) {
    Vec x = basis_point(original, v.basis);
    double viol = max_violation(original, x);
    if (viol > tol.tight)
      fail(ErrorCode::MappingFailed, "basis " + row_list(v.basis) +
                                         " maps to a point infeasible for the original instance");
    if (!walk.empty() && norm_inf(sub(walk.back(), x)) <= tol.dedup) continue;
    walk.push_back(std::move(x));
  }
  return walk;
}

}  // namespace svp
