// Copyright 2026 The channel_moments Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "channel_moments/error.hpp"

namespace chm {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Entrywise tolerance for identities evaluated on generated data.
inline constexpr double kExactTol = 1e-10;
/// Tolerance applied when validating user-supplied channels.
inline constexpr double kInputTol = 1e-8;

inline ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

/// e_i e_j^* as a rows x cols matrix.
inline ComplexMatrix matrix_unit(Index rows, Index cols, Index i, Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(rows, cols);
  e(i, j) = 1.0;
  return e;
}

inline ComplexVector basis_vector(Index n, Index i) {
  ComplexVector e = ComplexVector::Zero(n);
  e(i) = 1.0;
  return e;
}

inline double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "max_abs_diff: shape mismatch");
  return max_abs(a - b);
}

inline bool all_finite(const ComplexMatrix& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
        return false;
  return true;
}

inline void require_finite(const ComplexMatrix& a, const std::string& what) {
  require(all_finite(a), what + ": matrix has non-finite entries");
}

/// Largest singular value.
inline double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

inline double hermitian_defect(const ComplexMatrix& a) {
  return max_abs(a - a.adjoint());
}

/// Defect of V^*V = I, i.e. how far the columns are from orthonormal.
inline double isometry_defect(const ComplexMatrix& v) {
  return max_abs(v.adjoint() * v - identity(v.cols()));
}

/// Multiplies by a unit phase so that the largest-modulus entry is real
/// and positive. Ties resolve to the first entry in column-major order.
inline ComplexMatrix fix_phase(const ComplexMatrix& a) {
  Index bi = 0, bj = 0;
  double best = -1.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (std::abs(a(i, j)) > best + 1e-12) {
        best = std::abs(a(i, j));
        bi = i;
        bj = j;
      }
  if (best <= 0.0) return a;
  const Complex phase = std::conj(a(bi, bj)) / std::abs(a(bi, bj));
  return a * phase;
}

/// Distance between a and b modulo a global phase.
inline double phase_insensitive_diff(const ComplexMatrix& a,
                                     const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "phase_insensitive_diff: shape mismatch");
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase =
      std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return max_abs(a - b * phase);
}

}  // namespace chm
