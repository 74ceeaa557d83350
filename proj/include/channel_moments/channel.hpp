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

// Quantum channels in Kraus form, X -> sum_i A_i X A_i^*, and the
// quantities built from them: Choi matrices, complementary channels,
// superoperator matrices, Hilbert-Schmidt and induced p->p norms.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "channel_moments/matrix.hpp"
#include "channel_moments/tensor.hpp"

namespace chm {

/// Eigenvalues at or below this are dropped when extracting Kraus operators
/// from a Choi matrix.
inline constexpr double kChoiRankCutoff = 1e-10;

class KrausChannel {
 public:
  KrausChannel(Index dim_in, Index dim_out, std::vector<ComplexMatrix> kraus)
      : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
    require(dim_in >= 1 && dim_out >= 1,
            "KrausChannel: dimensions must be >= 1");
    require(!kraus_.empty(), "KrausChannel: at least one Kraus operator needed");
    for (const ComplexMatrix& a : kraus_) {
      require(a.rows() == dim_out && a.cols() == dim_in,
              "KrausChannel: Kraus operator shape must be dim_out x dim_in");
      require_finite(a, "KrausChannel");
    }
  }

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  std::size_t size() const { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const ComplexMatrix& operator[](std::size_t i) const { return kraus_[i]; }

 private:
  Index dim_in_;
  Index dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

struct CptpReport {
  /// || sum_i A_i^* A_i - I ||_inf (largest entry modulus).
  double tp_defect = 0.0;
  /// Always true for a Kraus-form channel.
  bool cp = true;
};

inline CptpReport validate_cptp(const KrausChannel& e) {
  ComplexMatrix sum = ComplexMatrix::Zero(e.dim_in(), e.dim_in());
  for (const ComplexMatrix& a : e.kraus()) sum.noalias() += a.adjoint() * a;
  return {max_abs(sum - identity(e.dim_in())), true};
}

inline void require_trace_preserving(const KrausChannel& e,
                                     const std::string& what,
                                     double tol = kInputTol) {
  const double defect = validate_cptp(e).tp_defect;
  if (defect > tol)
    throw InputError(what + ": channel is not trace preserving (defect " +
                     std::to_string(defect) + ")");
}

inline ComplexMatrix apply(const KrausChannel& e, const ComplexMatrix& x) {
  require(x.rows() == e.dim_in() && x.cols() == e.dim_in(),
          "apply: input must be dim_in x dim_in");
  ComplexMatrix out = ComplexMatrix::Zero(e.dim_out(), e.dim_out());
  for (const ComplexMatrix& a : e.kraus()) out.noalias() += a * x * a.adjoint();
  return out;
}

/// E^*(Y) = sum_i A_i^* Y A_i.
inline ComplexMatrix adjoint_apply(const KrausChannel& e,
                                   const ComplexMatrix& y) {
  require(y.rows() == e.dim_out() && y.cols() == e.dim_out(),
          "adjoint_apply: input must be dim_out x dim_out");
  ComplexMatrix out = ComplexMatrix::Zero(e.dim_in(), e.dim_in());
  for (const ComplexMatrix& a : e.kraus()) out.noalias() += a.adjoint() * y * a;
  return out;
}

/// Unitary remixing E_i = sum_j mu(j, i) A_j; describes the same channel.
inline KrausChannel remix(const KrausChannel& e, const ComplexMatrix& mu) {
  const Index m = static_cast<Index>(e.size());
  require(mu.rows() == m && mu.cols() == m,
          "remix: mixing matrix must be m x m");
  std::vector<ComplexMatrix> out;
  out.reserve(e.size());
  for (Index i = 0; i < m; ++i) {
    ComplexMatrix acc = ComplexMatrix::Zero(e.dim_out(), e.dim_in());
    for (Index j = 0; j < m; ++j) acc += mu(j, i) * e[j];
    out.push_back(std::move(acc));
  }
  return KrausChannel(e.dim_in(), e.dim_out(), std::move(out));
}

// ---------------------------------------------------------------------------
// Choi matrices

/// C = sum_ij E(e_i e_j^*) (x) e_i e_j^*, ordered output factor (x) input
/// factor.
class ChoiMatrix {
 public:
  ChoiMatrix(Index dim_in, Index dim_out, ComplexMatrix matrix)
      : dim_in_(dim_in), dim_out_(dim_out), matrix_(std::move(matrix)) {
    require(dim_in >= 1 && dim_out >= 1, "ChoiMatrix: dimensions must be >= 1");
    require(matrix_.rows() == dim_in * dim_out &&
                matrix_.cols() == dim_in * dim_out,
            "ChoiMatrix: matrix must be (n d) x (n d)");
    require_finite(matrix_, "ChoiMatrix");
    require(hermitian_defect(matrix_) <= kInputTol,
            "ChoiMatrix: matrix is not Hermitian");
  }

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  Index dim_in_;
  Index dim_out_;
  ComplexMatrix matrix_;
};

inline ChoiMatrix choi_matrix(const KrausChannel& e) {
  const Index n = e.dim_in();
  const Index d = e.dim_out();
  ComplexMatrix c = ComplexMatrix::Zero(n * d, n * d);
  // Entry ((a, i), (b, j)) = sum_k A_k(a, i) conj(A_k(b, j)): the Gram
  // matrix of the row-major vectorizations of the Kraus operators.
  for (const ComplexMatrix& a : e.kraus()) {
    ComplexVector v(n * d);
    for (Index r = 0; r < d; ++r)
      for (Index s = 0; s < n; ++s) v(r * n + s) = a(r, s);
    c.noalias() += v * v.adjoint();
  }
  return ChoiMatrix(n, d, std::move(c));
}

struct ChoiDecomposition {
  KrausChannel channel;
  /// Retained eigenvalues in (1e-10, 1e-8): kept, but small enough that
  /// they may be numerical noise.
  std::vector<double> marginal_eigenvalues;
  double min_eigenvalue = 0.0;
};

/// Minimal Kraus form from the spectral decomposition of C.
inline ChoiDecomposition decompose_choi(const ChoiMatrix& choi) {
  const Index n = choi.dim_in();
  const Index d = choi.dim_out();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(choi.matrix());
  const Eigen::VectorXd& vals = eig.eigenvalues();  // ascending
  const double min_eval = vals(0);
  if (min_eval < -kInputTol)
    throw InputError("kraus_from_choi: Choi matrix is not positive "
                     "semidefinite (min eigenvalue " +
                     std::to_string(min_eval) + ")");
  std::vector<ComplexMatrix> kraus;
  std::vector<double> marginal;
  for (Index k = vals.size() - 1; k >= 0; --k) {
    if (vals(k) <= kChoiRankCutoff) break;
    if (vals(k) < kInputTol) marginal.push_back(vals(k));
    const ComplexVector w = std::sqrt(vals(k)) * eig.eigenvectors().col(k);
    ComplexMatrix a(d, n);
    for (Index r = 0; r < d; ++r)
      for (Index s = 0; s < n; ++s) a(r, s) = w(r * n + s);
    kraus.push_back(std::move(a));
  }
  if (kraus.empty())
    throw InputError("kraus_from_choi: Choi matrix is numerically zero");
  return {KrausChannel(n, d, std::move(kraus)), std::move(marginal), min_eval};
}

inline KrausChannel kraus_from_choi(const ChoiMatrix& choi) {
  return decompose_choi(choi).channel;
}

inline KrausChannel minimize_kraus(const KrausChannel& e) {
  return kraus_from_choi(choi_matrix(e));
}

inline std::size_t choi_rank(const KrausChannel& e) {
  return minimize_kraus(e).size();
}

// ---------------------------------------------------------------------------
// Complementary channel

/// X -> sum_ij tr(A_i X A_j^*) e_i e_j^* on C^m, m = number of Kraus
/// operators as given. Realized with Kraus operators B_a (a < d) whose
/// i-th row is the a-th row of A_i.
inline KrausChannel complementary(const KrausChannel& e) {
  const Index m = static_cast<Index>(e.size());
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(e.dim_out()));
  for (Index a = 0; a < e.dim_out(); ++a) {
    ComplexMatrix b(m, e.dim_in());
    for (Index i = 0; i < m; ++i) b.row(i) = e[i].row(a);
    out.push_back(std::move(b));
  }
  return KrausChannel(e.dim_in(), m, std::move(out));
}

/// The matrix of traces [tr(A_i X A_j^*)]_ij, evaluated directly.
inline ComplexMatrix complementary_apply_direct(const KrausChannel& e,
                                                const ComplexMatrix& x) {
  require(x.rows() == e.dim_in() && x.cols() == e.dim_in(),
          "complementary_apply_direct: input must be dim_in x dim_in");
  const Index m = static_cast<Index>(e.size());
  ComplexMatrix out(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) out(i, j) = (e[i] * x * e[j].adjoint()).trace();
  return out;
}

// ---------------------------------------------------------------------------
// Norms

/// ||E||_2^2 = sum_il |tr(A_i^* A_l)|^2.
inline double hs_norm_sq(const KrausChannel& e) {
  double acc = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t l = 0; l < e.size(); ++l)
      acc += std::norm(hs_inner(e[l], e[i]));
  return acc;
}

/// ||E~||_2^2 = tr(E(I)^2).
inline double comp_hs_norm_sq(const KrausChannel& e) {
  const ComplexMatrix out = chm::apply(e, identity(e.dim_in()));
  return (out * out).trace().real();
}

/// Matrix of E acting on row-major vectorizations: vec(E(X)) = T vec(X),
/// T = sum_i A_i (x) conj(A_i). Shape d^2 x n^2.
inline ComplexMatrix superoperator_matrix(const KrausChannel& e) {
  ComplexMatrix t = ComplexMatrix::Zero(e.dim_out() * e.dim_out(),
                                        e.dim_in() * e.dim_in());
  for (const ComplexMatrix& a : e.kraus()) t += kron(a, a.conjugate());
  return t;
}

/// Superoperator matrix of an arbitrary linear map, built column by column
/// from its action on matrix units.
template <class LinearMap>
ComplexMatrix superoperator_from_map(Index n_in, Index n_out,
                                     const LinearMap& map) {
  ComplexMatrix t(n_out * n_out, n_in * n_in);
  for (Index i = 0; i < n_in; ++i)
    for (Index j = 0; j < n_in; ++j) {
      const ComplexMatrix y = map(matrix_unit(n_in, n_in, i, j));
      require(y.rows() == n_out && y.cols() == n_out,
              "superoperator_from_map: map output has the wrong shape");
      for (Index a = 0; a < n_out; ++a)
        for (Index b = 0; b < n_out; ++b) t(a * n_out + b, i * n_in + j) = y(a, b);
    }
  return t;
}

enum class PNorm { One, Two, Infinity };

inline PNorm pnorm_from_value(double p) {
  if (p == 1.0) return PNorm::One;
  if (p == 2.0) return PNorm::Two;
  if (std::isinf(p) && p > 0) return PNorm::Infinity;
  throw InputError("p2p_norm: only p in {1, 2, inf} is supported");
}

/// Induced p->p norm of a positive trace-preserving map.
///   p = 1:   || sum_i A_i^* A_i ||
///   p = 2:   largest singular value of the superoperator matrix
///   p = inf: || E(I) ||
inline double p2p_norm(const KrausChannel& e, PNorm p) {
  require_trace_preserving(e, "p2p_norm");
  switch (p) {
    case PNorm::One: {
      ComplexMatrix sum = ComplexMatrix::Zero(e.dim_in(), e.dim_in());
      for (const ComplexMatrix& a : e.kraus()) sum.noalias() += a.adjoint() * a;
      return operator_norm(sum);
    }
    case PNorm::Two:
      return operator_norm(superoperator_matrix(e));
    case PNorm::Infinity:
      return operator_norm(chm::apply(e, identity(e.dim_in())));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline double p2p_norm(const KrausChannel& e, double p) {
  return p2p_norm(e, pnorm_from_value(p));
}

struct ChannelNorms {
  double hs_sq = 0.0;
  double comp_hs_sq = 0.0;
  double sum = 0.0;
  double p2p_one = 0.0;
  double p2p_two = 0.0;
  double p2p_inf = 0.0;
};

inline ChannelNorms channel_norms(const KrausChannel& e) {
  ChannelNorms out;
  out.hs_sq = hs_norm_sq(e);
  out.comp_hs_sq = comp_hs_norm_sq(e);
  out.sum = out.hs_sq + out.comp_hs_sq;
  out.p2p_one = p2p_norm(e, PNorm::One);
  out.p2p_two = p2p_norm(e, PNorm::Two);
  out.p2p_inf = p2p_norm(e, PNorm::Infinity);
  return out;
}

/// Upper bound on ||E||_2^2 over channels M_n -> M_d: n^2 when n <= d,
/// otherwise d^2 n0 + d'^2 with n0 = floor(n / d), d' = n - n0 d.
inline double hs_sq_upper_bound(Index n, Index d) {
  if (n <= d) return static_cast<double>(n * n);
  const Index n0 = n / d;
  const Index rem = n - n0 * d;
  return static_cast<double>(d * d * n0 + rem * rem);
}

}  // namespace chm
