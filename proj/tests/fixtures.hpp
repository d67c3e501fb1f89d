#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "svpath/instances.hpp"
#include "svpath/linalg.hpp"
#include "svpath/polytope.hpp"
#include "svpath/random.hpp"

namespace fixtures {

using svp::Instance;
using svp::Mat;
using svp::Vec;

inline Instance cube3() { return svp::gen_hypercube(3); }

// Unit cube with the constraint x1 <= 1 appended a second time.
inline Instance cube_with_duplicate_row() {
  return Instance::from_rows("cube-dup", Mat{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {1, 0, 0}},
                             Vec{1, 1, 1, 0, 0, 0, 1}, true);
}

// Square pyramid over [0,1]^2 with apex (0.5, 0.5, 1). Four facets meet at
// the apex.
inline Instance pyramid() {
  return Instance::from_rows("pyramid", Mat{{0, 0, -1}, {-2, 0, 1}, {0, -2, 1}, {2, 0, 1}, {0, 2, 1}},
                             Vec{0, 0, 0, 2, 2}, true);
}

// Regular hexagon with unit inradius.
inline Instance hexagon() {
  Mat a(6, 2);
  Vec b(6, 1.0);
  for (int k = 0; k < 6; ++k) {
    a(k, 0) = std::cos(k * std::numbers::pi / 3);
    a(k, 1) = std::sin(k * std::numbers::pi / 3);
  }
  return Instance::from_rows("hexagon", a, b, false);
}

inline Instance two_axes_and_diagonal() {
  return Instance::from_rows("diag", Mat{{1, 0}, {0, 1}, {1, 1}, {-1, -1}}, Vec{1, 1, 1.5, 0}, true);
}

inline Mat random_matrix(svp::Rng& rng, std::size_t rows, std::size_t cols) {
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.gaussian();
  return m;
}

inline svp::IntMat random_int_matrix(svp::Rng& rng, std::size_t rows, std::size_t cols, std::int64_t lo,
                                     std::int64_t hi) {
  svp::IntMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform_int(lo, hi);
  return m;
}

inline Vec random_vec(svp::Rng& rng, std::size_t n) {
  Vec v(n);
  for (auto& x : v) x = rng.gaussian();
  return v;
}

inline double max_diff(const Vec& a, const Vec& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace fixtures
