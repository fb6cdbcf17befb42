#pragma once

// Thin bridge between negtype::Matrix and Eigen's dense symmetric solver.

#include <Eigen/Dense>
#include <vector>

#include "negtype/error.hpp"
#include "negtype/matrix.hpp"

namespace negtype::detail {

inline Eigen::MatrixXd to_eigen(const Matrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return out;
}

inline void require_finite(const Matrix& a) {
  for (double v : a.flat())
    if (!std::isfinite(v)) throw Error(Errc::EigenFailure, "matrix has non-finite entries");
}

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, orthonormal
};

inline SymmetricEigen symmetric_eigen(const Matrix& a, bool with_vectors) {
  require_finite(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      to_eigen(a), with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(Errc::EigenFailure, "symmetric eigensolver did not converge");
  SymmetricEigen out;
  out.values = solver.eigenvalues();
  if (with_vectors) out.vectors = solver.eigenvectors();
  return out;
}

// Flip so the largest-magnitude entry (lowest index on ties) is positive.
inline void canonical_sign(std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  if (!v.empty() && v[best] < 0.0)
    for (double& x : v) x = -x;
}

}  // namespace negtype::detail
