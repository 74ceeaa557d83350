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

// Haar sampling on the unit sphere and the unitary group, and a chunked
// Monte Carlo engine for matrix-valued integrals.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "channel_moments/matrix.hpp"
#include "channel_moments/rng.hpp"

namespace chm {

/// Fills `out` with a Haar-uniform unit vector: a normalized vector of
/// independent standard complex Gaussians.
inline void sample_sphere(RandomSource& rs, ComplexVector& out) {
  for (;;) {
    double norm_sq = 0.0;
    for (Index i = 0; i < out.size(); ++i) {
      out(i) = rs.gaussian();
      norm_sq += std::norm(out(i));
    }
    if (norm_sq > 1e-200) {
      out /= std::sqrt(norm_sq);
      return;
    }
  }
}

inline ComplexVector sample_sphere(Index n, RandomSource& rs) {
  ComplexVector v(n);
  sample_sphere(rs, v);
  return v;
}

/// A seeded stream of unit vectors in C^n.
class SphereSampler {
 public:
  SphereSampler(Index dim, std::uint64_t seed)
      : dim_(dim), seed_(seed), source_(seed, "sphere") {
    require(dim >= 1, "SphereSampler: dimension must be >= 1");
  }

  ComplexVector sample() {
    ++counter_;
    return sample_sphere(dim_, source_);
  }

  Index dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  Index dim_;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  RandomSource source_;
};

/// Haar-distributed rows x cols isometry (rows >= cols): QR of a Ginibre
/// matrix with the phases of diag(R) moved into Q.
inline ComplexMatrix haar_isometry(Index rows, Index cols, RandomSource& rs) {
  require(rows >= cols && cols >= 1, "haar_isometry: need rows >= cols >= 1");
  const ComplexMatrix g = ginibre(rows, cols, rs);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix& r = qr.matrixQR();
  for (Index j = 0; j < cols; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

inline ComplexMatrix sample_unitary(Index n, RandomSource& rs) {
  return haar_isometry(n, n, rs);
}

// ---------------------------------------------------------------------------
// Monte Carlo

/// Matrix-valued Monte Carlo estimate. std_error(i, j) pools the real and
/// imaginary sample variances: sqrt((var_re + var_im) / N).
struct MCEstimate {
  ComplexMatrix mean;
  RealMatrix std_error;
  std::size_t samples = 0;
};

/// Samples per independent RNG stream. Fixed, so estimates do not depend on
/// the number of worker threads.
inline constexpr std::size_t kMcChunkSize = 4096;

/// Absolute slack added to sigma * stderr to absorb rounding on entries
/// whose sample variance is zero.
inline constexpr double kMcAbsFloor = 1e-12;

/// Worker count: hardware concurrency, capped by CHANNEL_MOMENTS_THREADS.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHANNEL_MOMENTS_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

namespace detail {

struct ChunkMoments {
  RealMatrix mean_re, mean_im, m2_re, m2_im;
  std::size_t count = 0;
};

}  // namespace detail

/// Estimates E[f] where `factory()` builds a kernel callable as
/// `kernel(RandomSource&, ComplexMatrix& out)` that writes one rows x cols
/// sample into `out`. Each worker owns one kernel (so kernels may keep
/// scratch space). Chunk c draws from stream (seed, stream, c); chunk
/// moments are merged in chunk order, so the result is bit-identical for
/// any thread count.
template <class KernelFactory>
MCEstimate monte_carlo(Index rows, Index cols, std::size_t samples,
                       std::uint64_t seed, std::string_view stream,
                       const KernelFactory& factory) {
  require(samples >= 2, "monte_carlo: need at least 2 samples");
  const std::size_t chunks = (samples + kMcChunkSize - 1) / kMcChunkSize;
  const std::string stream_name(stream);

  auto run_chunk = [&](auto& kernel, ComplexMatrix& buf, std::size_t c,
                       detail::ChunkMoments& m) {
    const std::size_t begin = c * kMcChunkSize;
    const std::size_t count = std::min(kMcChunkSize, samples - begin);
    RandomSource rs(seed, stream_name, c);
    m.mean_re.setZero(rows, cols);
    m.mean_im.setZero(rows, cols);
    m.m2_re.setZero(rows, cols);
    m.m2_im.setZero(rows, cols);
    m.count = count;
    for (std::size_t s = 0; s < count; ++s) {
      kernel(rs, buf);
      const double inv = 1.0 / static_cast<double>(s + 1);
      for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
          const double xr = buf(i, j).real();
          const double xi = buf(i, j).imag();
          const double dr = xr - m.mean_re(i, j);
          const double di = xi - m.mean_im(i, j);
          m.mean_re(i, j) += dr * inv;
          m.mean_im(i, j) += di * inv;
          m.m2_re(i, j) += dr * (xr - m.mean_re(i, j));
          m.m2_im(i, j) += di * (xi - m.mean_im(i, j));
        }
    }
  };

  // Chan et al. pairwise merge; always applied in chunk order.
  detail::ChunkMoments total;
  auto merge = [&](const detail::ChunkMoments& m) {
    if (total.count == 0) {
      total = m;
      return;
    }
    const double na = static_cast<double>(total.count);
    const double nb = static_cast<double>(m.count);
    const double nab = na + nb;
    const RealMatrix dr = m.mean_re - total.mean_re;
    const RealMatrix di = m.mean_im - total.mean_im;
    total.mean_re += dr * (nb / nab);
    total.mean_im += di * (nb / nab);
    total.m2_re += m.m2_re + dr.cwiseProduct(dr) * (na * nb / nab);
    total.m2_im += m.m2_im + di.cwiseProduct(di) * (na * nb / nab);
    total.count += m.count;
  };

  const std::size_t workers =
      std::min<std::size_t>(worker_count(), chunks);
  if (workers <= 1) {
    auto kernel = factory();
    ComplexMatrix buf(rows, cols);
    detail::ChunkMoments m;
    for (std::size_t c = 0; c < chunks; ++c) {
      run_chunk(kernel, buf, c, m);
      merge(m);
    }
  } else {
    // Waves of `workers` chunks bound the memory held for unmerged chunks.
    std::vector<detail::ChunkMoments> wave(workers);
    for (std::size_t first = 0; first < chunks; first += workers) {
      const std::size_t width = std::min(workers, chunks - first);
      std::vector<std::thread> pool;
      pool.reserve(width);
      for (std::size_t w = 0; w < width; ++w)
        pool.emplace_back([&, w] {
          auto kernel = factory();
          ComplexMatrix buf(rows, cols);
          run_chunk(kernel, buf, first + w, wave[w]);
        });
      for (auto& t : pool) t.join();
      for (std::size_t w = 0; w < width; ++w) merge(wave[w]);
    }
  }

  const double n = static_cast<double>(total.count);
  MCEstimate est;
  est.samples = total.count;
  est.mean.resize(rows, cols);
  est.mean.real() = total.mean_re;
  est.mean.imag() = total.mean_im;
  est.std_error = ((total.m2_re + total.m2_im) / ((n - 1.0) * n)).cwiseSqrt();
  return est;
}

/// Entrywise comparison of an estimate against an exact value.
struct McComparison {
  double max_abs_dev = 0.0;
  /// max over entries of |dev| / stderr (entries with zero stderr skipped).
  double max_sigma_ratio = 0.0;
  double median_stderr = 0.0;
  bool pass = false;
};

inline McComparison compare(const MCEstimate& est, const ComplexMatrix& exact,
                            double sigma) {
  require(est.mean.rows() == exact.rows() && est.mean.cols() == exact.cols(),
          "compare: shape mismatch between estimate and exact value");
  McComparison cmp;
  cmp.pass = true;
  std::vector<double> errs;
  errs.reserve(static_cast<std::size_t>(exact.size()));
  for (Index j = 0; j < exact.cols(); ++j)
    for (Index i = 0; i < exact.rows(); ++i) {
      const double dev = std::abs(est.mean(i, j) - exact(i, j));
      const double se = est.std_error(i, j);
      errs.push_back(se);
      cmp.max_abs_dev = std::max(cmp.max_abs_dev, dev);
      if (se > 0.0) cmp.max_sigma_ratio = std::max(cmp.max_sigma_ratio, dev / se);
      if (dev > sigma * se + kMcAbsFloor) cmp.pass = false;
    }
  if (!errs.empty()) {
    std::nth_element(errs.begin(), errs.begin() + errs.size() / 2, errs.end());
    cmp.median_stderr = errs[errs.size() / 2];
  }
  return cmp;
}

inline McComparison compare(const MCEstimate& est, Complex exact, double sigma) {
  return compare(est, ComplexMatrix::Constant(1, 1, exact), sigma);
}

}  // namespace chm
