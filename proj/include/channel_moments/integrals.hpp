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

// Closed forms for polynomial integrals over the unit sphere of C^n under
// the unitarily invariant probability measure, and Monte Carlo estimators
// for the same integrals.
//
// Notation: <A phi, phi> = phi^* A phi = tr(A phi phi^*).

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "channel_moments/haar.hpp"
#include "channel_moments/tensor.hpp"

namespace chm {

namespace detail {

inline Index square_dim(const ComplexMatrix& a, const char* what) {
  require(a.rows() == a.cols() && a.rows() >= 1,
          std::string(what) + ": operand must be square");
  return a.rows();
}

inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                             const char* what) {
  require(a.rows() == a.cols() && b.rows() == b.cols() && a.rows() == b.rows(),
          std::string(what) + ": operands must be square and of equal size");
}

/// n (n+1) ... (n+k-1).
inline double rising(Index n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(n + i);
  return r;
}

/// Side length m with m * m == size, for operators on H (x) H.
inline Index factor_dim(const ComplexMatrix& a, const char* what) {
  require(a.rows() == a.cols(), std::string(what) + ": operand must be square");
  Index m = 1;
  while (m * m < a.rows()) ++m;
  require(m * m == a.rows(), std::string(what) + ": operand must act on H (x) H");
  return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact evaluators

/// int (phi phi^*)^{(x)k} dphi = (sum_s Gamma(s)) / (n (n+1) ... (n+k-1)).
inline ComplexMatrix exact_moment(Index n, int k) {
  require(k >= 1, "exact_moment: k must be >= 1");
  if (k > 4) throw DimensionError("exact_moment: k must be <= 4");
  return permutation_sum(TensorSpace(n, k)) / detail::rising(n, k);
}

/// int tr(A phi phi^*) dphi = tr(A) / n.
inline Complex exact_first_scalar(const ComplexMatrix& a) {
  const Index n = detail::square_dim(a, "exact_first_scalar");
  return a.trace() / static_cast<double>(n);
}

/// int <A phi, phi> <B phi, phi> dphi = (tr(AB) + tr(A) tr(B)) / (n (n+1)).
inline Complex exact_pair_scalar(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_dim(a, b, "exact_pair_scalar");
  const double n = static_cast<double>(a.rows());
  return ((a * b).trace() + a.trace() * b.trace()) / (n * (n + 1.0));
}

/// int |tr(A phi phi^*)|^2 dphi = (tr(A A^*) + |tr A|^2) / (n (n+1)).
inline double exact_abs_sq(const ComplexMatrix& a) {
  const double n = static_cast<double>(detail::square_dim(a, "exact_abs_sq"));
  return ((a * a.adjoint()).trace().real() + std::norm(a.trace())) / (n * (n + 1.0));
}

/// int tr(A phi phi^*) phi phi^* dphi = (A + tr(A) I) / (n (n+1)).
inline ComplexMatrix exact_weighted2(const ComplexMatrix& a) {
  const Index n = detail::square_dim(a, "exact_weighted2");
  const double nn = static_cast<double>(n);
  return (a + a.trace() * identity(n)) / (nn * (nn + 1.0));
}

/// int (phi phi^* (x) I) A (phi phi^* (x) I) dphi = (A + I (x) tr_1 A) / (n (n+1)).
inline ComplexMatrix exact_sandwich1(const ComplexMatrix& a) {
  const Index n = detail::factor_dim(a, "exact_sandwich1");
  const double nn = static_cast<double>(n);
  const ComplexMatrix tr1 = partial_trace(a, {n, n}, {1});
  return (a + kron(identity(n), tr1)) / (nn * (nn + 1.0));
}

/// Double integral of (phi phi^* (x) psi psi^*) A (phi phi^* (x) psi psi^*):
/// (A + I (x) tr_1 A + tr_2 A (x) I + tr(A) I (x) I) / (n^2 (n+1)^2).
inline ComplexMatrix exact_sandwich2(const ComplexMatrix& a) {
  const Index n = detail::factor_dim(a, "exact_sandwich2");
  const double nn = static_cast<double>(n);
  const ComplexMatrix tr1 = partial_trace(a, {n, n}, {1});
  const ComplexMatrix tr2 = partial_trace(a, {n, n}, {0});
  const ComplexMatrix id = identity(n);
  return (a + kron(id, tr1) + kron(tr2, id) + a.trace() * identity(n * n)) /
         (nn * nn * (nn + 1.0) * (nn + 1.0));
}

/// int <A phi, phi> <B phi, phi> phi phi^* dphi.
inline ComplexMatrix exact_third_scalar_weighted(const ComplexMatrix& a,
                                                 const ComplexMatrix& b) {
  detail::require_same_dim(a, b, "exact_third_scalar_weighted");
  const Index n = a.rows();
  const Complex ta = a.trace(), tb = b.trace();
  const ComplexMatrix num = (ta * tb + (a * b).trace()) * identity(n) + ta * b +
                            tb * a + a * b + b * a;
  return num / detail::rising(n, 3);
}

/// int <A phi, phi> phi phi^* (x) phi phi^* dphi.
inline ComplexMatrix exact_third_matrix_weighted(const ComplexMatrix& a) {
  const Index n = detail::square_dim(a, "exact_third_matrix_weighted");
  const ComplexMatrix id = identity(n);
  const ComplexMatrix s = swap_operator(n);
  const ComplexMatrix ai = kron(a, id);
  const ComplexMatrix num = a.trace() * (identity(n * n) + s) + kron(id, a) + ai +
                            s * ai + ai * s;
  return num / detail::rising(n, 3);
}

/// int <A phi, phi> <B phi, phi> phi phi^* (x) phi phi^* dphi, expanded form:
/// (I (x) I + S) [ (tr A tr B + tr AB) I (x) I
///                 + tr A (B (x) I + I (x) B) + tr B (A (x) I + I (x) A)
///                 + AB (x) I + I (x) AB + BA (x) I + I (x) BA
///                 + A (x) B + B (x) A ] / (n (n+1) (n+2) (n+3)).
inline ComplexMatrix exact_fourth_weighted(const ComplexMatrix& a,
                                           const ComplexMatrix& b) {
  detail::require_same_dim(a, b, "exact_fourth_weighted");
  const Index n = a.rows();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix id2 = identity(n * n);
  const Complex ta = a.trace(), tb = b.trace();
  const ComplexMatrix ab = a * b, ba = b * a;
  const ComplexMatrix inner =
      (ta * tb + ab.trace()) * id2 + ta * (kron(b, id) + kron(id, b)) +
      tb * (kron(a, id) + kron(id, a)) + kron(ab, id) + kron(id, ab) +
      kron(ba, id) + kron(id, ba) + kron(a, b) + kron(b, a);
  return (id2 + swap_operator(n)) * inner / detail::rising(n, 4);
}

/// General permutation-sum evaluator:
///   int prod_i <W_i phi, phi> (phi phi^*)^{(x)(k - j)} dphi
///     = tr_{1..j}[(W_1 (x) ... (x) W_j (x) I ...) sum_{s in S_k} Gamma(s)]
///       / (n (n+1) ... (n+k-1)),
/// with j = weights.size() <= k <= 4 and n^k <= 2^12.
inline ComplexMatrix exact_weighted_moment(std::span<const ComplexMatrix> weights,
                                           Index n, int k) {
  const int j = static_cast<int>(weights.size());
  require(k >= 1 && j <= k, "exact_weighted_moment: need weights.size() <= k");
  if (k > 4) throw DimensionError("exact_weighted_moment: k must be <= 4");
  const TensorSpace space(n, k);
  ComplexMatrix left = ComplexMatrix::Identity(1, 1);
  for (int f = 0; f < k; ++f) {
    if (f < j) {
      require(weights[f].rows() == n && weights[f].cols() == n,
              "exact_weighted_moment: weights must be n x n");
      left = kron(left, weights[f]);
    } else {
      left = kron(left, identity(n));
    }
  }
  const ComplexMatrix full = left * permutation_sum(space);
  std::vector<Index> dims(k, n);
  std::vector<int> keep;
  for (int f = j; f < k; ++f) keep.push_back(f);
  return partial_trace(full, dims, keep) / detail::rising(n, k);
}

/// Remark-style evaluation of the fourth-order weighted integral through
/// the 24-term sum over S_4. Limited to n^4 <= 2^12.
inline ComplexMatrix exact_fourth_weighted_by_permutations(const ComplexMatrix& a,
                                                           const ComplexMatrix& b) {
  detail::require_same_dim(a, b, "exact_fourth_weighted_by_permutations");
  const std::vector<ComplexMatrix> w{a, b};
  return exact_weighted_moment(w, a.rows(), 4);
}

// ---------------------------------------------------------------------------
// Monte Carlo estimators

/// Monte Carlo estimate of int prod_i <W_i phi, phi> (phi phi^*)^{(x)m} dphi
/// (a 1x1 estimate when m == 0).
inline MCEstimate mc_weighted_moment(const std::vector<ComplexMatrix>& weights,
                                     Index n, int m, std::size_t samples,
                                     std::uint64_t seed) {
  require(n >= 1 && m >= 0, "mc_weighted_moment: invalid dimensions");
  for (const ComplexMatrix& w : weights)
    require(w.rows() == n && w.cols() == n, "mc_weighted_moment: weights must be n x n");
  Index dim = 1;
  for (int f = 0; f < m; ++f) dim *= n;
  if (dim > (Index{1} << 10))
    throw DimensionError("mc_weighted_moment: n^k exceeds 2^10");
  auto factory = [&] {
    return [&weights, n, m, dim, phi = ComplexVector(n), v = ComplexVector(dim),
            tmp = ComplexVector(dim)](RandomSource& rs, ComplexMatrix& out) mutable {
      sample_sphere(rs, phi);
      Complex weight = 1.0;
      for (const ComplexMatrix& w : weights) weight *= phi.dot(w * phi);
      if (m == 0) {
        out(0, 0) = weight;
        return;
      }
      // v = phi^{(x)m}
      v.head(n) = phi;
      Index len = n;
      for (int f = 1; f < m; ++f) {
        for (Index i = 0; i < len; ++i)
          tmp.segment(i * n, n) = v(i) * phi;
        len *= n;
        v.head(len) = tmp.head(len);
      }
      out.noalias() = weight * v * v.adjoint();
    };
  };
  return monte_carlo(dim, dim, samples, seed, "weighted_moment", factory);
}

inline MCEstimate mc_moment(Index n, int k, std::size_t samples, std::uint64_t seed) {
  require(k >= 1, "mc_moment: k must be >= 1");
  return mc_weighted_moment({}, n, k, samples, seed);
}

/// Monte Carlo estimate of int (phi phi^* (x) I) A (phi phi^* (x) I) dphi.
inline MCEstimate mc_sandwich1(const ComplexMatrix& a, std::size_t samples,
                               std::uint64_t seed) {
  const Index n = detail::factor_dim(a, "mc_sandwich1");
  auto factory = [&] {
    return [&a, n, phi = ComplexVector(n), p = ComplexMatrix(n * n, n * n)](
               RandomSource& rs, ComplexMatrix& out) mutable {
      sample_sphere(rs, phi);
      p = kron(phi * phi.adjoint(), identity(n));
      out.noalias() = p * a * p;
    };
  };
  return monte_carlo(n * n, n * n, samples, seed, "sandwich1", factory);
}

/// Monte Carlo estimate of the double sandwich integral with independent
/// phi and psi.
inline MCEstimate mc_sandwich2(const ComplexMatrix& a, std::size_t samples,
                               std::uint64_t seed) {
  const Index n = detail::factor_dim(a, "mc_sandwich2");
  auto factory = [&] {
    return [&a, n, phi = ComplexVector(n), psi = ComplexVector(n),
            p = ComplexMatrix(n * n, n * n)](RandomSource& rs,
                                             ComplexMatrix& out) mutable {
      sample_sphere(rs, phi);
      sample_sphere(rs, psi);
      p = kron(phi * phi.adjoint(), psi * psi.adjoint());
      out.noalias() = p * a * p;
    };
  };
  return monte_carlo(n * n, n * n, samples, seed, "sandwich2", factory);
}

}  // namespace chm
