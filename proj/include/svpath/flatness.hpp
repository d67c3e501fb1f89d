#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "svpath/linalg.hpp"
#include "svpath/polytope.hpp"

namespace svp {

enum class FlatnessMethod { InverseFormula, Enumeration };

struct FlatnessReport {
  double delta = 0.0;
  std::vector<std::size_t> argmin_basis;
  FlatnessMethod method = FlatnessMethod::Enumeration;
  std::uint64_t n_bases_checked = 0;
};

struct SubdetReport {
  std::int64_t Delta = 0;
  std::int64_t Delta1 = 0;
  std::int64_t Delta_n_minus_1 = 0;
  double bound_on_inv_delta = 0.0;  // n * Delta1 * Delta_{n-1}
};

struct DeltaCertificate {
  bool holds = false;
  double slack = 0.0;       // n*Delta1*Delta_{n-1} - 1/delta
  double inv_delta = 0.0;
  double bound = 0.0;       // n*Delta1*Delta_{n-1}
  double outer_bound = 0.0; // n*Delta^2
  FlatnessReport flatness;
  SubdetReport subdet;
};

inline constexpr std::uint64_t kDefaultDeltaCap = 1'000'000;
inline constexpr std::uint64_t kDefaultSubdetCap = 10'000'000;

/// Sine of the angle between z and span(span_vectors), measured directly as
/// the length of the residual of N(z) after projecting out an orthonormal
/// basis of the span.
double delta_hat(const std::vector<Vec>& span_vectors, const Vec& z);

/// Flatness of n independent vectors: 1 / (largest column norm of the
/// inverse of the matrix whose rows are N(z_k)).
double delta_basis(const std::vector<Vec>& z);

/// Exhaustive minimum of delta_basis over all independent n-row subsets.
FlatnessReport delta_A(const Instance& inst, std::uint64_t cap = kDefaultDeltaCap);

/// Largest absolute sub-determinants of every size, of size 1 and size n-1.
SubdetReport subdet_report(const IntMat& m, std::uint64_t cap = kDefaultSubdetCap);

/// Checks 1/delta <= n*Delta1*Delta_{n-1} (+1e-6) on an integral instance.
DeltaCertificate certify_delta_Delta(const Instance& inst, std::uint64_t delta_cap = kDefaultDeltaCap,
                                     std::uint64_t subdet_cap = kDefaultSubdetCap);

/// Replaces every row a_i by Q a_i; endpoints are mapped by x -> Q x so they
/// stay vertices of the rotated polytope.
Instance rotate_rows(const Instance& inst, const Mat& q);

}  // namespace svp
