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

// Dense operators on tensor powers H^{(x)k}.
//
// Basis convention: the first tensor factor is the slowest-varying index,
// so e_i (x) e_j sits at position i * n + j. Kronecker products, partial
// traces and permutation operators all share this ordering.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "channel_moments/matrix.hpp"

namespace chm {

/// Maximum total dimension n^k of a tensor space.
inline constexpr Index kMaxTensorDim = Index{1} << 20;
/// Maximum dimension for which dense n^k x n^k operators are materialized.
inline constexpr Index kMaxDenseOperatorDim = Index{1} << 12;

class TensorSpace {
 public:
  TensorSpace(Index local_dim, int factors)
      : local_dim_(local_dim), factors_(factors) {
    require(local_dim >= 1, "TensorSpace: local dimension must be >= 1");
    require(factors >= 1, "TensorSpace: number of factors must be >= 1");
    Index total = 1;
    for (int f = 0; f < factors; ++f) {
      total *= local_dim;
      if (total > kMaxTensorDim)
        throw DimensionError("TensorSpace: n^k exceeds 2^20");
    }
    dim_ = total;
  }

  Index local_dim() const { return local_dim_; }
  int factors() const { return factors_; }
  Index dim() const { return dim_; }

 private:
  Index local_dim_;
  int factors_;
  Index dim_ = 1;
};

/// A bijection of {0, ..., k-1}; images()[p] is the slot that position p
/// is sent to.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
      require(v >= 0 && v < static_cast<int>(images_.size()) && !seen[v],
              "Permutation: images must be a bijection of 0..k-1");
      seen[v] = true;
    }
  }

  static Permutation identity(int k) {
    std::vector<int> im(k);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
  }

  static Permutation transposition(int k, int a, int b) {
    std::vector<int> im(k);
    std::iota(im.begin(), im.end(), 0);
    require(a >= 0 && a < k && b >= 0 && b < k,
            "Permutation::transposition: index out of range");
    std::swap(im[a], im[b]);
    return Permutation(std::move(im));
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int p) const { return images_[p]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int p = 0; p < size(); ++p) inv[images_[p]] = p;
    return Permutation(std::move(inv));
  }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// (s o t)(p) = s(t(p)).
inline Permutation compose(const Permutation& s, const Permutation& t) {
  require(s.size() == t.size(), "compose: permutation sizes differ");
  std::vector<int> im(s.size());
  for (int p = 0; p < s.size(); ++p) im[p] = s(t(p));
  return Permutation(std::move(im));
}

/// All k! permutations in lexicographic order of their image arrays.
inline std::vector<Permutation> all_permutations(int k) {
  require(k >= 1, "all_permutations: k must be >= 1");
  std::vector<int> im(k);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

namespace detail {

inline Index checked_product(Index a, Index b, const char* what) {
  if (a > 0 && b > kMaxTensorDim / a)
    throw DimensionError(std::string(what) + ": dimension exceeds 2^20");
  return a * b;
}

/// For each basis index of H^{(x)k}, the index it is mapped to by Gamma(s).
inline std::vector<Index> permuted_indices(const TensorSpace& space,
                                           const Permutation& s) {
  require(s.size() == space.factors(),
          "permutation size does not match the number of tensor factors");
  const int k = space.factors();
  const Index n = space.local_dim();
  std::vector<Index> stride(k);
  Index st = 1;
  for (int f = k - 1; f >= 0; --f) {
    stride[f] = st;
    st *= n;
  }
  std::vector<Index> out(space.dim());
  std::vector<Index> digit(k, 0);
  for (Index idx = 0; idx < space.dim(); ++idx) {
    Index target = 0;
    for (int p = 0; p < k; ++p) target += digit[p] * stride[s(p)];
    out[idx] = target;
    for (int f = k - 1; f >= 0; --f) {
      if (++digit[f] < n) break;
      digit[f] = 0;
    }
  }
  return out;
}

}  // namespace detail

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index rows = detail::checked_product(a.rows(), b.rows(), "kron");
  const Index cols = detail::checked_product(a.cols(), b.cols(), "kron");
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// x (x) y for column vectors.
inline ComplexVector kron_vec(const ComplexVector& x, const ComplexVector& y) {
  ComplexVector out(detail::checked_product(x.size(), y.size(), "kron"));
  for (Index i = 0; i < x.size(); ++i)
    out.segment(i * y.size(), y.size()) = x(i) * y;
  return out;
}

/// Traces out every factor not listed in `keep`. The result acts on the
/// kept factors in their original order; an empty `keep` yields the 1x1
/// matrix [tr(A)].
inline ComplexMatrix partial_trace(const ComplexMatrix& a,
                                   std::span<const Index> dims,
                                   std::span<const int> keep) {
  require(!dims.empty(), "partial_trace: no factor dimensions given");
  Index total = 1;
  for (Index d : dims) {
    require(d >= 1, "partial_trace: factor dimensions must be >= 1");
    total = detail::checked_product(total, d, "partial_trace");
  }
  require(a.rows() == total && a.cols() == total,
          "partial_trace: product of factor dimensions does not match matrix");
  const int k = static_cast<int>(dims.size());
  std::vector<bool> kept(k, false);
  for (int f : keep) {
    require(f >= 0 && f < k, "partial_trace: kept factor index out of range");
    require(!kept[f], "partial_trace: kept factor listed twice");
    kept[f] = true;
  }

  std::vector<Index> stride(k);
  Index st = 1;
  for (int f = k - 1; f >= 0; --f) {
    stride[f] = st;
    st *= dims[f];
  }
  // Offsets of every multi-index restricted to a subset of factors.
  auto offsets = [&](bool want_kept) {
    std::vector<Index> offs{0};
    for (int f = 0; f < k; ++f) {
      if (kept[f] != want_kept) continue;
      std::vector<Index> next;
      next.reserve(offs.size() * dims[f]);
      for (Index o : offs)
        for (Index v = 0; v < dims[f]; ++v) next.push_back(o + v * stride[f]);
      offs = std::move(next);
    }
    return offs;
  };
  const std::vector<Index> kept_off = offsets(true);
  const std::vector<Index> traced_off = offsets(false);

  const Index m = static_cast<Index>(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (Index c = 0; c < m; ++c)
    for (Index r = 0; r < m; ++r) {
      Complex acc = 0.0;
      for (Index t : traced_off) acc += a(kept_off[r] + t, kept_off[c] + t);
      out(r, c) = acc;
    }
  return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& a,
                                   std::initializer_list<Index> dims,
                                   std::initializer_list<int> keep) {
  return partial_trace(a, std::span<const Index>(dims.begin(), dims.size()),
                       std::span<const int>(keep.begin(), keep.size()));
}

/// Gamma(s): moves the vector in slot p to slot s(p), so factor q of the
/// output is x_{s^{-1}(q)}.
inline ComplexMatrix permutation_operator(const TensorSpace& space,
                                          const Permutation& s) {
  if (space.dim() > kMaxDenseOperatorDim)
    throw DimensionError("permutation_operator: n^k exceeds dense limit 2^12");
  const std::vector<Index> target = detail::permuted_indices(space, s);
  ComplexMatrix out = ComplexMatrix::Zero(space.dim(), space.dim());
  for (Index idx = 0; idx < space.dim(); ++idx) out(target[idx], idx) = 1.0;
  return out;
}

/// Applies Gamma(s) to a vector without materializing the operator.
inline ComplexVector permute_factors(const TensorSpace& space,
                                     const Permutation& s,
                                     const ComplexVector& x) {
  require(x.size() == space.dim(), "permute_factors: vector size mismatch");
  const std::vector<Index> target = detail::permuted_indices(space, s);
  ComplexVector out(space.dim());
  for (Index idx = 0; idx < space.dim(); ++idx) out(target[idx]) = x(idx);
  return out;
}

/// S(x (x) y) = y (x) x on C^n (x) C^n.
inline ComplexMatrix swap_operator(Index n) {
  require(n >= 1, "swap_operator: n must be >= 1");
  return permutation_operator(TensorSpace(n, 2),
                              Permutation::transposition(2, 0, 1));
}

/// Sum over all s in S_k of Gamma(s), unnormalized.
inline ComplexMatrix permutation_sum(const TensorSpace& space) {
  if (space.factors() > 4)
    throw DimensionError("permutation_sum: at most 4 tensor factors supported");
  if (space.dim() > kMaxDenseOperatorDim)
    throw DimensionError("permutation_sum: n^k exceeds dense limit 2^12");
  ComplexMatrix out = ComplexMatrix::Zero(space.dim(), space.dim());
  for (const Permutation& s : all_permutations(space.factors())) {
    const std::vector<Index> target = detail::permuted_indices(space, s);
    for (Index idx = 0; idx < space.dim(); ++idx) out(target[idx], idx) += 1.0;
  }
  return out;
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Orthogonal projection onto the symmetric subspace of H^{(x)k}, k <= 4.
inline ComplexMatrix symmetric_projector(const TensorSpace& space) {
  return permutation_sum(space) / factorial(space.factors());
}

/// <A, B> = tr(A B^*).
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "hs_inner: shape mismatch");
  return (a.array() * b.array().conjugate()).sum();
}

inline double hs_norm(const ComplexMatrix& a) { return a.norm(); }

}  // namespace chm
