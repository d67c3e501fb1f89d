#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svpath/polytope.hpp"
#include "svpath/random.hpp"

namespace svp {

enum class Family { Hypercube, Simplex, RandomSphere, Transportation, Rotated, CutCube };

std::string_view to_string(Family f) noexcept;
std::optional<Family> parse_family(std::string_view name);

/// Family-dependent meaning of m and n:
///   hypercube, simplex, cut-cube: n is the dimension, m is ignored
///     (cut-cube reads params["cut"], default n - 0.5);
///   random-sphere: m rows in dimension n;
///   transportation: n supplies and m demands;
///   rotated: a rotated hypercube of dimension n, or a rotated random-sphere
///     instance when m is given and differs from 2n.
struct GeneratorSpec {
  Family family = Family::Hypercube;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
};

/// [0,1]^n as [I; -I] x <= (1,...,1,0,...,0), endpoints origin and all-ones.
Instance gen_hypercube(std::size_t n);

/// {x >= 0, sum x <= 1}, endpoints origin and e_1.
Instance gen_simplex(std::size_t n);

/// [0,1]^n with the corner cut off by sum x <= cut.
Instance gen_cut_cube(std::size_t n, double cut);

/// Transportation polytope with explicit supplies and demands, written in
/// the free variables x_ij (i < p-1, j < q-1). Throws InfeasibleTotals when
/// the totals differ.
Instance gen_transportation(const std::vector<std::int64_t>& supplies, const std::vector<std::int64_t>& demands);

/// As above with supplies and demands drawn from [1, 5] until the totals
/// agree, then perturbed (integrally) so that the polytope is simple.
Instance gen_transportation(std::size_t p, std::size_t q, std::uint64_t seed);

/// Rows uniform on the sphere, b = 1. Resamples until the polytope is bounded
/// and non-degenerate; `resamples` receives the number of discarded draws.
Instance gen_random_sphere(std::size_t m, std::size_t n, std::uint64_t seed, int* resamples = nullptr);

/// Applies a seeded random orthogonal matrix to the rows and endpoints.
Instance gen_rotated(const Instance& base, std::uint64_t seed);

/// Haar-style random orthogonal matrix from Gram-Schmidt on a Gaussian matrix.
Mat random_orthogonal(std::size_t n, Rng& rng);

Instance generate(const GeneratorSpec& spec);

/// The two vertices at maximal BFS distance (first such pair in vertex order).
std::pair<std::size_t, std::size_t> farthest_pair(const VertexGraph& g);

/// Instance file I/O (JSON). Numbers are written with round-trip precision.
Instance parse_instance(std::string_view text, std::string_view source = "<memory>");
std::string dump_instance(const Instance& inst);
Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& inst, const std::filesystem::path& path);

}  // namespace svp
