#include <cmath>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "svpath/error.hpp"
#include "svpath/linalg.hpp"

using namespace svp;
using fixtures::max_diff;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an svp::Error");
  return ErrorCode::InvalidArgument;
}

// Cofactor expansion along the first row.
long long cofactor_det(const IntMat& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  long long total = 0;
  std::vector<std::size_t> rows(n - 1);
  std::iota(rows.begin(), rows.end(), 1);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    long long minor = cofactor_det(m.submatrix(rows, cols));
    total += (j % 2 ? -1 : 1) * m(0, j) * minor;
  }
  return total;
}

}  // namespace

TEST_CASE("normalize") {
  CHECK(max_diff(normalize(Vec{3, 4}), {0.6, 0.8}) < 1e-15);
  CHECK(max_diff(normalize(Vec{1, 0, 0}), {1, 0, 0}) == 0.0);
  CHECK(max_diff(normalize(Vec{2, 2}), {std::sqrt(2.0) / 2, std::sqrt(2.0) / 2}) < 1e-15);
  CHECK(code_of([] { normalize(Vec{0, 0}); }) == ErrorCode::ZeroVector);
  CHECK(code_of([] { normalize(Vec{1e-301, 0}); }) == ErrorCode::ZeroVector);
  CHECK(std::abs(norm(normalize(Vec{1e-200, 3e-200})) - 1.0) < 1e-12);
}

TEST_CASE("solve") {
  CHECK(max_diff(solve(Mat::identity(3), Vec{1, 2, 3}), {1, 2, 3}) == 0.0);
  CHECK(max_diff(solve(Mat{{2, 0}, {0, 4}}, Vec{2, 4}), {1, 1}) == 0.0);
  CHECK(max_diff(solve(Mat{{1, 1}, {0, 1}}, Vec{3, 1}), {2, 1}) < 1e-15);
  CHECK(code_of([] { solve(Mat{{1, 1}, {2, 2}}, Vec{1, 2}); }) == ErrorCode::Singular);
}

TEST_CASE("inverse") {
  CHECK(inverse(Mat::identity(4)) == Mat::identity(4));
  CHECK(max_abs_diff(inverse(Mat{{2, 0}, {0, 5}}), Mat{{0.5, 0}, {0, 0.2}}) < 1e-15);
  CHECK(inverse(Mat{{0, 1}, {1, 0}}) == Mat{{0, 1}, {1, 0}});
}

TEST_CASE("int_determinant") {
  CHECK(int_determinant(IntMat{{1, 0}, {0, 1}}) == 1);
  CHECK(int_determinant(IntMat{{2, 1}, {1, 1}}) == 1);
  IntMat m{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}};
  CHECK(int_determinant(m) == cofactor_det(m));
  CHECK(int_determinant(m) == -3);
  CHECK(int_determinant(IntMat{{1, 2}, {2, 4}}) == 0);
  // The pivot search must swap rows when the leading entry vanishes.
  CHECK(int_determinant(IntMat{{0, 1}, {1, 0}}) == -1);
  const std::int64_t big = std::int64_t{1} << 40;
  CHECK(code_of([&] { int_determinant(IntMat{{big, 1}, {-1, big}}); }) == ErrorCode::Overflow);
}

TEST_CASE("rank") {
  CHECK(rank(Mat::identity(3)) == 3);
  CHECK(rank(Mat{{1, 1}, {2, 2}}) == 1);
  CHECK(rank(Mat{{1, 0}, {0, 1}, {1, 1}}) == 2);
  CHECK(rank(Mat(2, 3)) == 0);
}

TEST_CASE("property: solve recovers x on random well-conditioned systems") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 8;
    Mat m = fixtures::random_matrix(rng, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += 3.0 * (m(i, i) >= 0 ? 1 : -1);
    Vec x = fixtures::random_vec(rng, n);
    Vec got = solve(m, mat_vec(m, x));
    CHECK(max_diff(got, x) <= 1e-7 * std::max(1.0, norm_inf(x)));
    Mat inv = inverse(m);
    CHECK(max_abs_diff(mat_mul(m, inv), Mat::identity(n)) <= 1e-8);
  }
}

TEST_CASE("property: exact and floating determinants agree") {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + trial % 6;
    IntMat m = fixtures::random_int_matrix(rng, n, n, -5, 5);
    std::int64_t exact = int_determinant(m);
    double approx = 0.0;
    try {
      approx = LuDecomposition(m.to_real()).determinant();
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::Singular);
    }
    CHECK(std::abs(approx - static_cast<double>(exact)) <= 1e-6 * std::max(1.0, std::abs(double(exact))));
    if (n <= 4) CHECK(exact == cofactor_det(m));
  }
}

TEST_CASE("property: normalize is idempotent") {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    Vec v = fixtures::random_vec(rng, 1 + trial % 7);
    for (auto& x : v) x *= std::pow(10.0, rng.uniform_int(-50, 50));
    Vec u = normalize(v);
    CHECK(std::abs(norm(u) - 1.0) <= 1e-12);
    CHECK(max_diff(normalize(u), u) <= 1e-12);
  }
}
