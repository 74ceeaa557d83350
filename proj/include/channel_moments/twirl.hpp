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

// Unitary twirling of linear maps on n x n matrices and least-squares fits
// to the covariant family X -> lambda X + mu tr(X) I.

#pragma once

#include <cstdint>

#include "channel_moments/haar.hpp"
#include "channel_moments/tensor.hpp"

namespace chm {

struct TwirlFit {
  Complex lambda = 0.0;
  Complex mu = 0.0;
  /// Frobenius norm of (T - lambda I - mu |vec I><vec I|), i.e. the HS
  /// error of the fit summed over the matrix-unit basis.
  double residual = 0.0;
  /// False for n = 1, where X and tr(X) I coincide: only lambda + mu is
  /// determined and is reported in `lambda` (with mu = 0).
  bool identifiable = true;
  /// Haar samples used by the twirl; 0 when the map was already covariant.
  std::size_t samples = 0;
};

inline Index superop_side(const ComplexMatrix& t) {
  require(t.rows() == t.cols(), "twirl: superoperator must map M_n to M_n");
  Index n = 1;
  while (n * n < t.rows()) ++n;
  require(n * n == t.rows(), "twirl: superoperator must be n^2 x n^2");
  return n;
}

/// Least-squares fit of a superoperator matrix to lambda I + mu B, where
/// B = vec(I) vec(I)^T is the matrix of X -> tr(X) I. The regressors are
/// real, so the normal equations are [[n^2, n], [n, n^2]] [lambda, mu]^T =
/// [tr T, vec(I)^T T vec(I)]^T.
inline TwirlFit fit_covariant(const ComplexMatrix& t) {
  const Index n = superop_side(t);
  const double nn = static_cast<double>(n);
  Complex tr_t = t.trace();
  Complex proj = 0.0;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) proj += t(a * n + a, b * n + b);

  TwirlFit fit;
  if (n == 1) {
    fit.lambda = t(0, 0);
    fit.mu = 0.0;
    fit.identifiable = false;
  } else {
    const double det = nn * nn * nn * nn - nn * nn;
    fit.lambda = (nn * nn * tr_t - nn * proj) / det;
    fit.mu = (nn * nn * proj - nn * tr_t) / det;
  }
  ComplexMatrix err = t;
  err.diagonal().array() -= fit.lambda;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) err(a * n + a, b * n + b) -= fit.mu;
  fit.residual = err.norm();
  return fit;
}

/// Monte Carlo twirl: average over Haar U of the superoperator of
/// X -> U^* Phi(U X U^*) U, i.e. (U^* (x) U^T) T (U (x) conj(U)).
inline MCEstimate twirl_superoperator(const ComplexMatrix& t, std::size_t samples,
                                      std::uint64_t seed) {
  const Index n = superop_side(t);
  auto factory = [&] {
    return [&t, n](RandomSource& rs, ComplexMatrix& out) {
      const ComplexMatrix u = sample_unitary(n, rs);
      const ComplexMatrix fwd = kron(u, u.conjugate());
      out.noalias() = fwd.adjoint() * t * fwd;
    };
  };
  return monte_carlo(n * n, n * n, samples, seed, "twirl", factory);
}

/// Fits Phi to the covariant family. A map that already fits to within
/// 1e-10 is returned as is and `samples` is ignored; otherwise the map is
/// twirled with `samples` Haar unitaries first.
inline TwirlFit twirl_fit(const ComplexMatrix& t, std::size_t samples,
                          std::uint64_t seed) {
  TwirlFit direct = fit_covariant(t);
  if (direct.residual <= kExactTol) return direct;
  const MCEstimate twirled = twirl_superoperator(t, samples, seed);
  TwirlFit fit = fit_covariant(twirled.mean);
  fit.samples = twirled.samples;
  return fit;
}

}  // namespace chm
