#include "svpath/flatness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "svpath/combinatorics.hpp"
#include "svpath/error.hpp"

namespace svp {

namespace {

constexpr double kIndependence = 1e-12;

// Removes the components of v along the orthonormal vectors in q (two passes
// of modified Gram-Schmidt).
Vec residual(const std::vector<Vec>& q, Vec v) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& qi : q) {
      double c = dot(qi, v);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * qi[j];
    }
  return v;
}

}  // namespace

double delta_hat(const std::vector<Vec>& span_vectors, const Vec& z) {
  const std::size_t n = z.size();
  if (span_vectors.size() + 1 != n)
    fail(ErrorCode::InvalidArgument, "delta_hat needs n-1 span vectors for dimension " + std::to_string(n));
  std::vector<Vec> q;
  q.reserve(span_vectors.size());
  for (const auto& s : span_vectors) {
    if (s.size() != n) fail(ErrorCode::InvalidArgument, "span vector has wrong dimension");
    Vec r = residual(q, normalize(s));
    double len = norm(r);
    if (len <= kIndependence) fail(ErrorCode::DependentVectors, "span vectors are linearly dependent");
    q.push_back(scale(r, 1.0 / len));
  }
  double sine = norm(residual(q, normalize(z)));
  if (sine <= kIndependence) fail(ErrorCode::DependentVectors, "z lies in the span of the other vectors");
  return std::min(sine, 1.0);
}

double delta_basis(const std::vector<Vec>& z) {
  const std::size_t n = z.size();
  if (n == 0) fail(ErrorCode::InvalidArgument, "delta_basis needs at least one vector");
  Mat rows(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (z[k].size() != n) fail(ErrorCode::InvalidArgument, "delta_basis needs n vectors of dimension n");
    Vec u = normalize(z[k]);
    std::copy(u.begin(), u.end(), rows.row(k).begin());
  }
  if (rank(rows) < n) fail(ErrorCode::DependentVectors, "vectors are linearly dependent");
  Mat inv;
  try {
    inv = inverse(rows);
  } catch (const Error& e) {
    fail(ErrorCode::DependentVectors, e.what());
  }
  double largest = 0.0;
  for (std::size_t k = 0; k < n; ++k) largest = std::max(largest, norm(inv.column(k)));
  return std::min(1.0 / largest, 1.0);
}

FlatnessReport delta_A(const Instance& inst, std::uint64_t cap) {
  const std::size_t m = inst.m(), n = inst.n();
  const std::uint64_t count = binomial(m, n);
  if (count > cap)
    fail(ErrorCode::CapExceeded, "delta needs C(" + std::to_string(m) + "," + std::to_string(n) +
                                     ") = " + std::to_string(count) + " bases, cap is " + std::to_string(cap));
  FlatnessReport report;
  report.method = FlatnessMethod::Enumeration;
  report.delta = std::numeric_limits<double>::infinity();
  std::vector<Vec> rows(n);
  for_each_combination(m, n, [&](std::span<const std::size_t> idx) {
    ++report.n_bases_checked;
    Mat sub = inst.A().select_rows(idx);
    if (rank(sub) < n) return true;
    for (std::size_t k = 0; k < n; ++k) {
      auto r = sub.row(k);
      rows[k].assign(r.begin(), r.end());
    }
    double d;
    try {
      d = delta_basis(rows);
    } catch (const Error&) {
      return true;
    }
    if (d < report.delta) {
      report.delta = d;
      report.argmin_basis.assign(idx.begin(), idx.end());
    }
    return true;
  });
  if (report.argmin_basis.empty())
    fail(ErrorCode::DependentVectors, "A has no n linearly independent rows");
  return report;
}

SubdetReport subdet_report(const IntMat& a, std::uint64_t cap) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) fail(ErrorCode::InvalidArgument, "subdet_report needs a non-empty matrix");
  const std::size_t kmax = std::min(m, n);
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    uint128_t c = static_cast<uint128_t>(binomial(m, k)) * binomial(n, k);
    total = (c > cap || total + c > cap) ? cap + 1 : total + static_cast<std::uint64_t>(c);
  }
  if (total > cap)
    fail(ErrorCode::CapExceeded, "sub-determinant enumeration exceeds cap " + std::to_string(cap));

  std::vector<std::int64_t> by_size(kmax + 1, 0);
  by_size[0] = 1;  // empty minor
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::int64_t best = 0;
    for_each_combination(m, k, [&](std::span<const std::size_t> rows) {
      for_each_combination(n, k, [&](std::span<const std::size_t> cols) {
        std::int64_t d = int_determinant(a.submatrix(rows, cols));
        if (d == std::numeric_limits<std::int64_t>::min())
          fail(ErrorCode::Overflow, "sub-determinant magnitude exceeds int64");
        best = std::max(best, d < 0 ? -d : d);
        return true;
      });
      return true;
    });
    by_size[k] = best;
  }

  SubdetReport r;
  r.Delta1 = by_size[1];
  r.Delta_n_minus_1 = n - 1 <= kmax ? by_size[n - 1] : 0;
  r.Delta = *std::max_element(by_size.begin() + 1, by_size.end());
  r.bound_on_inv_delta = static_cast<double>(n) * static_cast<double>(r.Delta1) *
                         static_cast<double>(r.Delta_n_minus_1);
  return r;
}

DeltaCertificate certify_delta_Delta(const Instance& inst, std::uint64_t delta_cap, std::uint64_t subdet_cap) {
  if (!inst.integral()) fail(ErrorCode::InvalidArgument, "certificate requires an integral instance");
  DeltaCertificate c;
  c.flatness = delta_A(inst, delta_cap);
  c.subdet = subdet_report(*inst.int_A(), subdet_cap);
  const double n = static_cast<double>(inst.n());
  c.inv_delta = 1.0 / c.flatness.delta;
  c.bound = c.subdet.bound_on_inv_delta;
  c.outer_bound = n * static_cast<double>(c.subdet.Delta) * static_cast<double>(c.subdet.Delta);
  c.slack = c.bound - c.inv_delta;
  c.holds = c.inv_delta <= c.bound + 1e-6 && c.bound <= c.outer_bound;
  return c;
}

Instance rotate_rows(const Instance& inst, const Mat& q) {
  const std::size_t n = inst.n();
  if (q.rows() != n || q.cols() != n) fail(ErrorCode::InvalidArgument, "rotation must be n x n");
  if (max_abs_diff(mat_mul(q.transpose(), q), Mat::identity(n)) > 1e-9)
    fail(ErrorCode::NotOrthogonal, "matrix is not orthogonal within 1e-9");
  // Row i of the new matrix is (Q a_i)^T, i.e. A Q^T.
  Mat rotated = mat_mul(inst.raw_A(), q.transpose());
  Instance out = Instance::from_rows(inst.name(), std::move(rotated), inst.raw_b(), false);
  std::optional<Vec> x1, x2;
  if (inst.x1()) x1 = mat_vec(q, *inst.x1());
  if (inst.x2()) x2 = mat_vec(q, *inst.x2());
  return out.with_endpoints(std::move(x1), std::move(x2));
}

}  // namespace svp
