#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace svp {

using Vec = std::vector<double>;

/// Dense row-major real matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat identity(std::size_t n);
  static Mat diagonal(std::span<const double> diag);
  static Mat from_rows(const std::vector<Vec>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vec column(std::size_t j) const;

  // Submatrix made of the listed rows, in the order given.
  Mat select_rows(std::span<const std::size_t> idx) const;
  Mat transpose() const;

  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Exact integer matrix, row-major.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMat(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMat submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  Mat to_real() const;

  friend bool operator==(const IntMat&, const IntMat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

struct LinalgTolerances {
  double singular_pivot = 1e-12;  // absolute, applied in solve/inverse
  double rank_relative = 1e-9;    // relative to the largest pivot
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);
double norm_inf(std::span<const double> v);
Vec normalize(std::span<const double> v);
Vec add(std::span<const double> a, std::span<const double> b);
Vec sub(std::span<const double> a, std::span<const double> b);
Vec scale(std::span<const double> v, double s);
Vec mat_vec(const Mat& m, std::span<const double> v);
Mat mat_mul(const Mat& a, const Mat& b);
double max_abs_diff(const Mat& a, const Mat& b);

/// LU factorization with partial pivoting, PA = LU.
class LuDecomposition {
 public:
  explicit LuDecomposition(const Mat& m, const LinalgTolerances& tol = {});

  Vec solve(std::span<const double> rhs) const;
  Mat inverse() const;
  double determinant() const;

 private:
  Mat lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
};

Vec solve(const Mat& m, std::span<const double> rhs, const LinalgTolerances& tol = {});
Mat inverse(const Mat& m, const LinalgTolerances& tol = {});
std::size_t rank(const Mat& m, const LinalgTolerances& tol = {});

/// Exact determinant by Bareiss fraction-free elimination. Throws Overflow
/// when an intermediate leaves the int64 range.
std::int64_t int_determinant(const IntMat& m);

}  // namespace svp
