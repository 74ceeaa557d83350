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

// Named channel families and seeded random channel generators.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "channel_moments/channel.hpp"
#include "channel_moments/haar.hpp"

namespace chm {

/// The nd isometries V_ij = U^j W V^i (i = 1..n, j = 1..d) with W the
/// embedding of C^n into the first n coordinates of C^d, U the cyclic shift
/// on C^d and V the clock matrix diag(w^0, ..., w^{n-1}), w = exp(2 pi i/n).
/// Returned in order (i - 1) * d + (j - 1). {V_ij / sqrt(n)} is an
/// orthonormal basis of the d x n matrices.
inline std::vector<ComplexMatrix> gen_vij_basis(Index n, Index d) {
  require(n >= 1 && d >= 1, "gen_vij_basis: dimensions must be >= 1");
  require(n <= d, "gen_vij_basis: requires n <= d");
  ComplexMatrix w = ComplexMatrix::Zero(d, n);
  for (Index k = 0; k < n; ++k) w(k, k) = 1.0;
  ComplexMatrix shift = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) shift((i + 1) % d, i) = 1.0;
  ComplexMatrix clock = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                      static_cast<double>(n));

  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(n * d));
  ComplexMatrix clock_pow = identity(n);
  for (Index i = 1; i <= n; ++i) {
    clock_pow = clock_pow * clock;
    ComplexMatrix shift_pow = identity(d);
    for (Index j = 1; j <= d; ++j) {
      shift_pow = shift_pow * shift;
      out.push_back(shift_pow * w * clock_pow);
    }
  }
  return out;
}

/// X -> tr(X) I / d. For n <= d the Kraus operators are V_ij / sqrt(nd);
/// for n > d (no isometries exist) they are the matrix units f_a e_b^* /
/// sqrt(d).
inline KrausChannel gen_depolarizing(Index n, Index d) {
  require(n >= 1 && d >= 1, "gen_depolarizing: dimensions must be >= 1");
  std::vector<ComplexMatrix> kraus;
  if (n <= d) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(n * d));
    for (ComplexMatrix& v : gen_vij_basis(n, d)) kraus.push_back(scale * v);
  } else {
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < n; ++b)
        kraus.push_back(scale * matrix_unit(d, n, a, b));
  }
  return KrausChannel(n, d, std::move(kraus));
}

inline KrausChannel gen_identity(Index n) {
  return KrausChannel(n, n, {identity(n)});
}

/// X -> V X V^*.
inline KrausChannel gen_isometric(const ComplexMatrix& v) {
  require(v.rows() >= 1 && v.cols() >= 1, "gen_isometric: empty matrix");
  require_finite(v, "gen_isometric");
  const double defect = isometry_defect(v);
  if (defect > kExactTol)
    throw InputError("gen_isometric: V is not an isometry (||V^*V - I|| = " +
                     std::to_string(defect) + ")");
  return KrausChannel(v.cols(), v.rows(), {v});
}

inline void require_unit_vector(const ComplexVector& psi, const std::string& what) {
  require(psi.size() >= 1, what + ": empty vector");
  const double defect = std::abs(psi.norm() - 1.0);
  if (!(defect <= kExactTol))
    throw InputError(what + ": psi is not a unit vector (| ||psi|| - 1 | = " +
                     std::to_string(defect) + ")");
}

/// X -> tr(X) psi psi^*, Kraus operators psi e_i^*.
inline KrausChannel gen_replacement(const ComplexVector& psi, Index n) {
  require(n >= 1, "gen_replacement: n must be >= 1");
  require_unit_vector(psi, "gen_replacement");
  std::vector<ComplexMatrix> kraus;
  for (Index i = 0; i < n; ++i) kraus.push_back(psi * basis_vector(n, i).adjoint());
  return KrausChannel(n, psi.size(), std::move(kraus));
}

/// X -> lambda tr(X) psi psi^* + (1 - lambda) tr(X) I / d. Components with
/// zero weight are omitted.
inline KrausChannel gen_e_lambda(double lambda, const ComplexVector& psi,
                                 Index n, Index d) {
  require(lambda >= 0.0 && lambda <= 1.0, "gen_e_lambda: lambda must be in [0, 1]");
  require(psi.size() == d, "gen_e_lambda: psi must have dimension d");
  std::vector<ComplexMatrix> kraus;
  if (lambda > 0.0) {
    const KrausChannel rep = gen_replacement(psi, n);
    for (const ComplexMatrix& a : rep.kraus()) kraus.push_back(std::sqrt(lambda) * a);
  }
  if (lambda < 1.0) {
    const KrausChannel dep = gen_depolarizing(n, d);
    for (const ComplexMatrix& a : dep.kraus()) kraus.push_back(std::sqrt(1.0 - lambda) * a);
  }
  return KrausChannel(n, d, std::move(kraus));
}

/// X -> sum_j p_j V_j X V_j^*.
inline KrausChannel gen_random_isometric(const std::vector<double>& weights,
                                         const std::vector<ComplexMatrix>& isometries) {
  require(!weights.empty() && weights.size() == isometries.size(),
          "gen_random_isometric: need one weight per isometry");
  double total = 0.0;
  for (double p : weights) {
    require(p > 0.0, "gen_random_isometric: weights must be positive");
    total += p;
  }
  require(std::abs(total - 1.0) <= kExactTol,
          "gen_random_isometric: weights must sum to 1");
  const Index d = isometries.front().rows();
  const Index n = isometries.front().cols();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const ComplexMatrix& v = isometries[j];
    require(v.rows() == d && v.cols() == n,
            "gen_random_isometric: isometries must share a shape");
    require(isometry_defect(v) <= kExactTol,
            "gen_random_isometric: V_" + std::to_string(j) + " is not an isometry");
    kraus.push_back(std::sqrt(weights[j]) * v);
  }
  return KrausChannel(n, d, std::move(kraus));
}

/// X -> t V_11 X V_11^* + (1 - t) tr(X) I / d, with the depolarizing part
/// realized by the V_ij family. Requires n <= d.
inline KrausChannel gen_cor10_t(double t, Index n, Index d) {
  require(t >= 0.0 && t <= 1.0, "gen_cor10_t: t must be in [0, 1]");
  const std::vector<ComplexMatrix> basis = gen_vij_basis(n, d);
  std::vector<double> weights;
  std::vector<ComplexMatrix> isos;
  if (t > 0.0) {
    weights.push_back(t);
    isos.push_back(basis.front());
  }
  if (t < 1.0)
    for (const ComplexMatrix& v : basis) {
      weights.push_back((1.0 - t) / static_cast<double>(n * d));
      isos.push_back(v);
    }
  return gen_random_isometric(weights, isos);
}

/// Haar-random channel of Kraus rank `rank` in Stinespring form: a Haar
/// isometry V : C^n -> C^d (x) C^rank, with A_i = (I (x) e_i^*) V.
/// Requires ceil(n / d) <= rank <= n d.
inline KrausChannel gen_random_cptp(Index n, Index d, Index rank,
                                    std::uint64_t seed) {
  require(n >= 1 && d >= 1, "gen_random_cptp: dimensions must be >= 1");
  const Index min_rank = (n + d - 1) / d;
  if (rank < min_rank || rank > n * d)
    throw InputError("gen_random_cptp: rank must be in [" +
                     std::to_string(min_rank) + ", " + std::to_string(n * d) + "]");
  RandomSource rs(seed, "random_cptp");
  const ComplexMatrix v = haar_isometry(d * rank, n, rs);
  std::vector<ComplexMatrix> kraus;
  for (Index i = 0; i < rank; ++i) {
    ComplexMatrix a(d, n);
    for (Index r = 0; r < d; ++r) a.row(r) = v.row(r * rank + i);
    kraus.push_back(std::move(a));
  }
  return KrausChannel(n, d, std::move(kraus));
}

/// Parameters of member `index` of the seeded random-channel ensemble:
/// (n, d) cycles through {1..4}^2, the rank is uniform on its legal range.
struct EnsembleMember {
  Index n = 1;
  Index d = 1;
  Index rank = 1;
  std::uint64_t seed = 0;
};

inline EnsembleMember ensemble_member(std::uint64_t seed, std::uint64_t index) {
  EnsembleMember m;
  m.n = static_cast<Index>(index % 16) / 4 + 1;
  m.d = static_cast<Index>(index % 16) % 4 + 1;
  RandomSource rs(seed, "ensemble", index);
  const Index lo = (m.n + m.d - 1) / m.d;
  const Index hi = m.n * m.d;
  m.rank = lo + static_cast<Index>(rs.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  m.seed = rs.next_u64();
  return m;
}

inline KrausChannel ensemble_channel(std::uint64_t seed, std::uint64_t index) {
  const EnsembleMember m = ensemble_member(seed, index);
  return gen_random_cptp(m.n, m.d, m.rank, m.seed);
}

}  // namespace chm
