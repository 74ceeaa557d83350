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

#include <cstdint>
#include <string>

#include <gtest/gtest.h>

#include "channel_moments.hpp"

namespace chm::testing {

inline ComplexMatrix random_matrix(Index rows, Index cols, std::uint64_t seed,
                                   const std::string& tag = "test_matrix") {
  RandomSource rs(seed, tag);
  return ginibre(rows, cols, rs);
}

inline ComplexMatrix random_hermitian(Index n, std::uint64_t seed) {
  const ComplexMatrix g = random_matrix(n, n, seed, "test_hermitian");
  return (g + g.adjoint()) / 2.0;
}

inline ComplexVector random_unit(Index n, std::uint64_t seed) {
  RandomSource rs(seed, "test_unit");
  return sample_sphere(n, rs);
}

inline ComplexMatrix random_unitary(Index n, std::uint64_t seed) {
  RandomSource rs(seed, "test_unitary");
  return sample_unitary(n, rs);
}

inline ::testing::AssertionResult MatrixNear(const ComplexMatrix& a, const ComplexMatrix& b,
                                             double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return ::testing::AssertionFailure()
           << "shape " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
  const double diff = max_abs_diff(a, b);
  if (diff <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "max |a - b| = " << diff << " > " << tol;
}

}  // namespace chm::testing
