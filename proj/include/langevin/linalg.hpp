/*
   Copyright 2026 The langevin-splitting Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Spectral helpers for symmetric matrices. Every matrix function here goes
// through an eigendecomposition of the symmetrized input (A + A^T) / 2 so the
// result is symmetric even when the input carries floating-point drift.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "langevin/errors.hpp"

namespace langevin {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;
using Vector = Vec<double>;
using Matrix = Mat<double>;

namespace linalg {

template <typename Derived>
Mat<typename Derived::Scalar> symmetrize(const Eigen::MatrixBase<Derived>& a) {
  return (a + a.transpose()) / typename Derived::Scalar(2);
}

/// Eigenpairs of a symmetric matrix, ascending eigenvalues.
template <typename Scalar>
struct Spectrum {
  Vec<Scalar> values;
  Mat<Scalar> vectors;

  Index size() const { return values.size(); }
  Scalar min() const { return values.minCoeff(); }
  Scalar max() const { return values.maxCoeff(); }

  /// V diag(g(lambda)) V^T.
  template <typename F>
  Mat<Scalar> apply(F&& g) const {
    Vec<Scalar> mapped = values.unaryExpr(g);
    return vectors * mapped.asDiagonal() * vectors.transpose();
  }
};

template <typename Derived>
Spectrum<typename Derived::Scalar> spectrum(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> solver(symmetrize(a));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Relative eigenvalue floor used by the positive-definiteness gate.
inline constexpr double kPdFloor = 1e-12;

/// Relative asymmetry tolerance accepted for covariance inputs.
inline constexpr double kSymmetryTol = 1e-12;

template <typename Derived>
void require_spd(const Eigen::MatrixBase<Derived>& a, const char* what) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(std::string(what) + ": matrix must be square and "
                         "non-empty");
  }
  if (!a.allFinite()) {
    throw NotPositiveDefinite(std::string(what) + ": non-finite entries");
  }
  const Scalar scale = std::max<Scalar>(a.cwiseAbs().maxCoeff(), Scalar(1e-300));
  const Scalar asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > Scalar(kSymmetryTol) * scale) {
    throw NotPositiveDefinite(std::string(what) + ": matrix is not symmetric");
  }
  const auto spec = spectrum(a);
  if (!(spec.max() > Scalar(0)) ||
      !(spec.min() > Scalar(kPdFloor) * spec.max())) {
    throw NotPositiveDefinite(std::string(what) +
                              ": matrix is not positive definite");
  }
}

template <typename Derived>
Mat<typename Derived::Scalar> sqrtm(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return spectrum(a).apply(
      [](Scalar l) { return std::sqrt(std::max(l, Scalar(0))); });
}

template <typename Derived>
Mat<typename Derived::Scalar> inv_sqrtm(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return spectrum(a).apply([](Scalar l) { return Scalar(1) / std::sqrt(l); });
}

template <typename Derived>
Mat<typename Derived::Scalar> spd_inverse(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return spectrum(a).apply([](Scalar l) { return Scalar(1) / l; });
}

template <typename Derived>
Mat<typename Derived::Scalar> expm_sym(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return spectrum(a).apply([](Scalar l) { return std::exp(l); });
}

template <typename Derived>
typename Derived::Scalar log_det_spd(const Eigen::MatrixBase<Derived>& a) {
  return spectrum(a).values.array().log().sum();
}

/// Loewner order: smallest eigenvalue of (a - b).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar loewner_gap(const Eigen::MatrixBase<DerivedA>& a,
                                      const Eigen::MatrixBase<DerivedB>& b) {
  return spectrum(a - b).min();
}

template <typename DerivedA, typename DerivedB>
bool commute(const Eigen::MatrixBase<DerivedA>& a,
             const Eigen::MatrixBase<DerivedB>& b, double rel_tol = 1e-10) {
  const auto comm = (a * b - b * a).norm();
  return comm <= rel_tol * a.norm() * b.norm();
}

/// Orthonormal basis that diagonalizes two commuting symmetric matrices.
/// Eigenspaces of `a` that are degenerate (relative gap below 1e-9) are
/// refined by diagonalizing `b` restricted to them.
template <typename Scalar>
struct JointBasis {
  Mat<Scalar> vectors;
  Vec<Scalar> a_values;
  Vec<Scalar> b_values;
};

template <typename DerivedA, typename DerivedB>
JointBasis<typename DerivedA::Scalar> joint_diagonalize(
    const Eigen::MatrixBase<DerivedA>& a,
    const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const auto spec_a = spectrum(a);
  const Index n = spec_a.size();
  Mat<Scalar> basis = spec_a.vectors;
  const Scalar scale = std::max(std::abs(spec_a.max()), std::abs(spec_a.min()));
  const Mat<Scalar> b_sym = symmetrize(b);

  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && spec_a.values(stop) - spec_a.values(start) <=
                           Scalar(1e-9) * scale) {
      ++stop;
    }
    const Index width = stop - start;
    if (width > 1) {
      const Mat<Scalar> block_basis = basis.middleCols(start, width);
      const Mat<Scalar> restricted =
          block_basis.transpose() * b_sym * block_basis;
      const auto inner = spectrum(restricted);
      basis.middleCols(start, width) = block_basis * inner.vectors;
    }
    start = stop;
  }

  JointBasis<Scalar> out;
  out.vectors = basis;
  out.a_values = (basis.transpose() * symmetrize(a) * basis).diagonal();
  out.b_values = (basis.transpose() * b_sym * basis).diagonal();
  return out;
}

}  // namespace linalg
}  // namespace langevin
