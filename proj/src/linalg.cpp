#include "svpath/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "svpath/combinatorics.hpp"
#include "svpath/error.hpp"

namespace svp {

namespace {

using wide = int128_t;

void require_same_size(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    fail(ErrorCode::InvalidArgument,
         "dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

}  // namespace

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::InvalidArgument, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diagonal(std::span<const double> diag) {
  Mat m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  Mat m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) fail(ErrorCode::InvalidArgument, "ragged row list");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Vec Mat::column(std::size_t j) const {
  Vec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Mat Mat::select_rows(std::span<const std::size_t> idx) const {
  Mat m(idx.size(), cols_);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    auto src = row(idx[r]);
    std::copy(src.begin(), src.end(), m.row(r).begin());
  }
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMat::IntMat(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::InvalidArgument, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMat IntMat::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  IntMat s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
  return s;
}

Mat IntMat::to_real() const {
  Mat m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = static_cast<double>((*this)(i, j));
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> v) {
  // Scaled accumulation so tiny and huge entries do not under/overflow.
  double amax = norm_inf(v);
  if (amax == 0.0 || !std::isfinite(amax)) return amax;
  double s = 0.0;
  for (double x : v) {
    double y = x / amax;
    s += y * y;
  }
  return amax * std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Vec normalize(std::span<const double> v) {
  double n = norm(v);
  if (!(n > 1e-300)) fail(ErrorCode::ZeroVector, "cannot normalize a zero vector");
  return scale(v, 1.0 / n);
}

Vec add(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scale(std::span<const double> v, double s) {
  Vec r(v.begin(), v.end());
  for (double& x : r) x *= s;
  return r;
}

Vec mat_vec(const Mat& m, std::span<const double> v) {
  if (m.cols() != v.size()) fail(ErrorCode::InvalidArgument, "mat_vec dimension mismatch");
  Vec r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) r[i] = dot(m.row(i), v);
  return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::InvalidArgument, "mat_mul dimension mismatch");
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::InvalidArgument, "max_abs_diff dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

LuDecomposition::LuDecomposition(const Mat& m, const LinalgTolerances& tol) : lu_(m) {
  if (!m.square()) fail(ErrorCode::InvalidArgument, "LU requires a square matrix");
  const std::size_t n = m.rows();
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (best < tol.singular_pivot)
      fail(ErrorCode::Singular, "singular matrix: pivot " + std::to_string(best) + " in column " +
                                    std::to_string(k));
    if (p != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
      std::swap(perm_[k], perm_[p]);
      sign_ = -sign_;
    }
    const double pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = lu_(i, k) / pivot;
      lu_(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

Vec LuDecomposition::solve(std::span<const double> rhs) const {
  const std::size_t n = lu_.rows();
  if (rhs.size() != n) fail(ErrorCode::InvalidArgument, "solve: rhs has wrong length");
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

Mat LuDecomposition::inverse() const {
  const std::size_t n = lu_.rows();
  Mat inv(n, n);
  Vec e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    Vec col = solve(e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    e[j] = 0.0;
  }
  return inv;
}

double LuDecomposition::determinant() const {
  double d = sign_;
  for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
  return d;
}

Vec solve(const Mat& m, std::span<const double> rhs, const LinalgTolerances& tol) {
  return LuDecomposition(m, tol).solve(rhs);
}

Mat inverse(const Mat& m, const LinalgTolerances& tol) { return LuDecomposition(m, tol).inverse(); }

std::size_t rank(const Mat& m, const LinalgTolerances& tol) {
  // Gaussian elimination with complete pivoting; the first pivot is the
  // largest entry, later pivots are compared against it.
  Mat a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> colmap(cols);
  for (std::size_t j = 0; j < cols; ++j) colmap[j] = j;
  double first = 0.0;
  std::size_t r = 0;
  for (; r < std::min(rows, cols); ++r) {
    std::size_t pi = r, pj = r;
    double best = 0.0;
    for (std::size_t i = r; i < rows; ++i)
      for (std::size_t j = r; j < cols; ++j)
        if (std::abs(a(i, colmap[j])) > best) {
          best = std::abs(a(i, colmap[j]));
          pi = i;
          pj = j;
        }
    if (r == 0) first = best;
    if (best == 0.0 || best <= tol.rank_relative * first) break;
    std::swap_ranges(a.row(r).begin(), a.row(r).end(), a.row(pi).begin());
    std::swap(colmap[r], colmap[pj]);
    const double pivot = a(r, colmap[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      double f = a(i, colmap[r]) / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = r; j < cols; ++j) a(i, colmap[j]) -= f * a(r, colmap[j]);
    }
  }
  return r;
}

std::int64_t int_determinant(const IntMat& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    fail(ErrorCode::InvalidArgument, "int_determinant requires a non-empty square matrix");
  constexpr wide lo = std::numeric_limits<std::int64_t>::min();
  constexpr wide hi = std::numeric_limits<std::int64_t>::max();

  const std::size_t n = m.rows();
  IntMat a = m;
  int sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        wide num = static_cast<wide>(a(i, j)) * a(k, k) - static_cast<wide>(a(i, k)) * a(k, j);
        // Bareiss: the division by the previous pivot is exact.
        wide q = num / prev;
        if (q < lo || q > hi) fail(ErrorCode::Overflow, "int_determinant: intermediate exceeds int64");
        a(i, j) = static_cast<std::int64_t>(q);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  std::int64_t d = a(n - 1, n - 1);
  if (sign < 0) {
    if (d == std::numeric_limits<std::int64_t>::min())
      fail(ErrorCode::Overflow, "int_determinant: result exceeds int64");
    d = -d;
  }
  return d;
}

}  // namespace svp
