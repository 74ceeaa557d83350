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

// Executable checks of the norm-sum bounds for channels M_n -> M_d,
//
//     (n + n^2) / d  <=  ||E||_2^2 + ||E~||_2^2  <=  n^2 + n,
//
// the characterization of the channels attaining them, the classification
// of purity-preserving channels, parameter sweeps across the attainable
// range, random isometric channels, and the broadcasting-map identity.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "channel_moments/channel.hpp"
#include "channel_moments/generators.hpp"
#include "channel_moments/haar.hpp"
#include "channel_moments/integrals.hpp"

namespace chm {

/// "At a bound" means within this distance of it.
inline constexpr double kBoundTol = 1e-8;

inline double norm_sum_lower_bound(Index n, Index d) {
  const double nn = static_cast<double>(n);
  return (nn + nn * nn) / static_cast<double>(d);
}

inline double norm_sum_upper_bound(Index n) {
  const double nn = static_cast<double>(n);
  return nn * nn + nn;
}

// ---------------------------------------------------------------------------
// Output purity

inline double output_purity(const KrausChannel& e, const ComplexVector& x) {
  const ComplexMatrix rho = chm::apply(e, x * x.adjoint());
  return (rho * rho).trace().real();
}

/// Monte Carlo estimate (1x1) of int tr(E(phi phi^*)^2) dphi.
inline MCEstimate mc_output_purity(const KrausChannel& e, std::size_t samples,
                                   std::uint64_t seed) {
  const Index n = e.dim_in();
  const Index d = e.dim_out();
  const Index m = static_cast<Index>(e.size());
  ComplexMatrix stacked(d * m, n);
  for (Index i = 0; i < m; ++i) stacked.middleRows(i * d, d) = e[i];
  auto factory = [&] {
    return [&stacked, n, d, m, phi = ComplexVector(n), y = ComplexVector(d * m)](
               RandomSource& rs, ComplexMatrix& out) mutable {
      sample_sphere(rs, phi);
      for (Index r = 0; r < d * m; ++r) {
        Complex acc = 0.0;
        for (Index c = 0; c < n; ++c) acc += stacked(r, c) * phi(c);
        y(r) = acc;
      }
      // y holds A_i phi in block i. With Y = [A_1 phi, ..., A_m phi],
      // tr(rho^2) = ||Y^* Y||_F^2 = ||Y Y^*||_F^2; use the smaller Gram.
      double purity = 0.0;
      if (m <= d) {
        for (Index i = 0; i < m; ++i)
          for (Index j = i; j < m; ++j) {
            Complex g = 0.0;
            for (Index r = 0; r < d; ++r) g += std::conj(y(i * d + r)) * y(j * d + r);
            purity += (i == j ? 1.0 : 2.0) * std::norm(g);
          }
      } else {
        for (Index a = 0; a < d; ++a)
          for (Index b = a; b < d; ++b) {
            Complex g = 0.0;
            for (Index i = 0; i < m; ++i) g += y(i * d + a) * std::conj(y(i * d + b));
            purity += (a == b ? 1.0 : 2.0) * std::norm(g);
          }
      }
      out(0, 0) = purity;
    };
  };
  return monte_carlo(1, 1, samples, seed, "output_purity", factory);
}

// ---------------------------------------------------------------------------
// Purity-preserving classification

enum class PurityKind { Isometric, Replacement, Not };

inline const char* to_string(PurityKind k) {
  switch (k) {
    case PurityKind::Isometric: return "Isometric";
    case PurityKind::Replacement: return "Replacement";
    case PurityKind::Not: return "Not";
  }
  return "?";
}

struct PurityVerdict {
  PurityKind kind = PurityKind::Not;
  /// Recovered V (Isometric), phase fixed: largest-modulus entry real > 0.
  ComplexMatrix isometry;
  /// Recovered psi (Replacement), same phase gauge.
  ComplexVector psi;
  /// For Not: the searched unit input with the lowest output purity.
  ComplexVector witness;
  double witness_purity = 1.0;
  /// 1 - witness_purity.
  double purity_defect = 0.0;
};

inline constexpr int kPuritySearchRandomInputs = 200;

/// Decides whether E maps every pure state to a pure state. The Kraus set
/// is minimized first; a single Kraus operator is an isometry, and a set of
/// rank-one operators with a common range vector psi is a replacement
/// channel. Anything else is searched for a witness input (the n basis
/// vectors and 200 Haar-random vectors).
inline PurityVerdict purity_classify(const KrausChannel& e) {
  require_trace_preserving(e, "purity_classify");
  const KrausChannel minimal = minimize_kraus(e);
  PurityVerdict verdict;

  if (minimal.size() == 1 && isometry_defect(minimal[0]) <= kInputTol) {
    verdict.kind = PurityKind::Isometric;
    verdict.isometry = fix_phase(minimal[0]);
    return verdict;
  }

  bool rank_one = true;
  ComplexVector common;
  for (const ComplexMatrix& a : minimal.kraus()) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() > 1 && sv(1) > kInputTol * std::max(1.0, sv(0))) {
      rank_one = false;
      break;
    }
    const ComplexVector u = svd.matrixU().col(0);
    if (common.size() == 0) {
      common = u;
    } else if (std::abs(common.dot(u)) < 1.0 - kInputTol) {
      rank_one = false;
      break;
    }
  }
  if (rank_one) {
    verdict.kind = PurityKind::Replacement;
    verdict.psi = fix_phase(common);
    return verdict;
  }

  const Index n = e.dim_in();
  RandomSource rs(0x5eedULL, "purity_witness");
  auto consider = [&](const ComplexVector& x) {
    const double p = output_purity(e, x);
    if (verdict.witness.size() == 0 || p < verdict.witness_purity) {
      verdict.witness = x;
      verdict.witness_purity = p;
    }
  };
  for (Index i = 0; i < n; ++i) consider(basis_vector(n, i));
  for (int r = 0; r < kPuritySearchRandomInputs; ++r) consider(sample_sphere(n, rs));
  verdict.kind = PurityKind::Not;
  verdict.purity_defect = 1.0 - verdict.witness_purity;
  return verdict;
}

// ---------------------------------------------------------------------------
// Norm-sum report

enum class ChannelClass { Depolarizing, Isometric, Replacement, Interior };

inline const char* to_string(ChannelClass c) {
  switch (c) {
    case ChannelClass::Depolarizing: return "Depolarizing";
    case ChannelClass::Isometric: return "Isometric";
    case ChannelClass::Replacement: return "Replacement";
    case ChannelClass::Interior: return "Interior";
  }
  return "?";
}

/// Largest entry of E(e_i e_j^*) - delta_ij I / d over all matrix units.
inline double depolarizing_defect(const KrausChannel& e) {
  const Index n = e.dim_in();
  const Index d = e.dim_out();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      ComplexMatrix target = ComplexMatrix::Zero(d, d);
      if (i == j) target = identity(d) / static_cast<double>(d);
      worst = std::max(worst, max_abs_diff(chm::apply(e, matrix_unit(n, n, i, j)), target));
    }
  return worst;
}

struct PurityBridge {
  double estimate = 0.0;
  double std_error = 0.0;
  /// (||E||_2^2 + ||E~||_2^2) / (n (n+1)).
  double predicted = 0.0;
  double deviation = 0.0;
  std::size_t samples = 0;
  bool pass = false;
};

struct Theorem1Report {
  Index n = 0, d = 0;
  double hs_sq = 0.0;
  double comp_hs_sq = 0.0;
  double sum = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool bounds_hold = false;
  ChannelClass classification = ChannelClass::Interior;
  /// For Depolarizing: E(X) = tr(X) I / d verified on all matrix units.
  /// For Isometric / Replacement: the purity classifier agreed.
  bool classification_confirmed = true;
  std::optional<PurityBridge> mc_check;
};

/// Norms via the Kraus-sum formulas, bound check, classification, and
/// (when mc_samples > 0) the Monte Carlo bridge
/// int tr(E(phi phi^*)^2) dphi = (||E||_2^2 + ||E~||_2^2) / (n (n+1)).
inline Theorem1Report theorem1_report(const KrausChannel& e, std::size_t mc_samples,
                                      std::uint64_t seed, double sigma = 5.0) {
  require_trace_preserving(e, "theorem1_report");
  Theorem1Report r;
  r.n = e.dim_in();
  r.d = e.dim_out();
  r.hs_sq = hs_norm_sq(e);
  r.comp_hs_sq = comp_hs_norm_sq(e);
  r.sum = r.hs_sq + r.comp_hs_sq;
  r.lower_bound = norm_sum_lower_bound(r.n, r.d);
  r.upper_bound = norm_sum_upper_bound(r.n);
  r.bounds_hold =
      r.sum >= r.lower_bound - kBoundTol && r.sum <= r.upper_bound + kBoundTol;

  if (r.sum <= r.lower_bound + kBoundTol) {
    r.classification = ChannelClass::Depolarizing;
    r.classification_confirmed = depolarizing_defect(e) <= kExactTol;
  } else if (r.sum >= r.upper_bound - kBoundTol) {
    const PurityVerdict v = purity_classify(e);
    if (v.kind == PurityKind::Isometric) {
      r.classification = ChannelClass::Isometric;
    } else if (v.kind == PurityKind::Replacement) {
      r.classification = ChannelClass::Replacement;
    } else {
      r.classification = ChannelClass::Interior;
      r.classification_confirmed = false;
    }
  }

  if (mc_samples > 0) {
    const MCEstimate est = mc_output_purity(e, mc_samples, seed);
    PurityBridge b;
    b.estimate = est.mean(0, 0).real();
    b.std_error = est.std_error(0, 0);
    const double nn = static_cast<double>(r.n);
    b.predicted = r.sum / (nn * (nn + 1.0));
    b.deviation = std::abs(b.estimate - b.predicted);
    b.samples = est.samples;
    b.pass = b.deviation <= sigma * b.std_error + kMcAbsFloor;
    r.mc_check = b;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Equivalence of the lower-bound characterizations

struct LowerBoundConditions {
  double sum = 0.0;
  double hs_sq = 0.0;
  double norm_sum_unsquared = 0.0;  // ||E||_2 + ||E~||_2
  double depolarizing_defect = 0.0;
  bool sum_at_bound = false;        // (a)
  bool is_depolarizing = false;     // (b)
  bool unsquared_at_bound = false;  // (c)
  bool hs_at_bound = false;         // (d)

  bool all() const { return sum_at_bound && is_depolarizing && unsquared_at_bound && hs_at_bound; }
  bool none() const {
    return !sum_at_bound && !is_depolarizing && !unsquared_at_bound && !hs_at_bound;
  }
};

inline LowerBoundConditions lower_bound_conditions(const KrausChannel& e,
                                                   double tol = kExactTol) {
  LowerBoundConditions c;
  const double n = static_cast<double>(e.dim_in());
  const double d = static_cast<double>(e.dim_out());
  c.hs_sq = hs_norm_sq(e);
  const double comp = comp_hs_norm_sq(e);
  c.sum = c.hs_sq + comp;
  c.norm_sum_unsquared = std::sqrt(c.hs_sq) + std::sqrt(comp);
  c.depolarizing_defect = depolarizing_defect(e);
  c.sum_at_bound = std::abs(c.sum - (n + n * n) / d) <= tol;
  c.is_depolarizing = c.depolarizing_defect <= tol;
  c.unsquared_at_bound = std::abs(c.norm_sum_unsquared - (std::sqrt(n) + n) / std::sqrt(d)) <= tol;
  c.hs_at_bound = std::abs(c.hs_sq - n / d) <= tol;
  return c;
}

struct EquivalenceReport {
  Index n = 0, d = 0;
  LowerBoundConditions depolarizing;
  std::size_t perturbed_checked = 0;
  /// Perturbed channels with ||E||_2^2 away from n/d by more than 1e-6 for
  /// which some other condition still held.
  std::size_t violations = 0;
  bool pass = false;
};

inline constexpr int kEquivalencePerturbations = 50;

/// The depolarizing channel must satisfy all four lower-bound conditions;
/// 50 channels (1 - eps) Dep + eps R with eps in [0.01, 1] and R random
/// must fail all of them whenever ||E||_2^2 differs from n/d.
inline EquivalenceReport theorem1_equiv_check(Index n, Index d, std::uint64_t seed) {
  require(n >= 1 && d >= 1 && n <= 4 && d <= 4,
          "theorem1_equiv_check: requires 1 <= n, d <= 4");
  EquivalenceReport r;
  r.n = n;
  r.d = d;
  const KrausChannel dep = gen_depolarizing(n, d);
  r.depolarizing = lower_bound_conditions(dep);
  for (int i = 0; i < kEquivalencePerturbations; ++i) {
    RandomSource rs(seed, "equivalence", static_cast<std::uint64_t>(i));
    const double eps = 0.01 + 0.99 * rs.uniform();
    const Index lo = (n + d - 1) / d;
    const Index rank = lo + static_cast<Index>(rs.next_u64() % static_cast<std::uint64_t>(n * d - lo + 1));
    const KrausChannel rnd = gen_random_cptp(n, d, rank, rs.next_u64());
    std::vector<ComplexMatrix> kraus;
    for (const ComplexMatrix& a : dep.kraus()) kraus.push_back(std::sqrt(1.0 - eps) * a);
    for (const ComplexMatrix& a : rnd.kraus()) kraus.push_back(std::sqrt(eps) * a);
    const LowerBoundConditions c = lower_bound_conditions(KrausChannel(n, d, std::move(kraus)));
    ++r.perturbed_checked;
    const bool hs_away = std::abs(c.hs_sq - static_cast<double>(n) / static_cast<double>(d)) > 1e-6;
    if (hs_away ? !c.none() : !c.all()) ++r.violations;
  }
  r.pass = r.depolarizing.all() && r.violations == 0;
  return r;
}

// ---------------------------------------------------------------------------
// Sweeps across [ (n + n^2) / d, n^2 + n ]

enum class SweepFamily { ELambda, Cor10T };

inline const char* to_string(SweepFamily f) {
  return f == SweepFamily::ELambda ? "e_lambda" : "cor10_t";
}

inline SweepFamily parse_sweep_family(const std::string& s) {
  if (s == "e_lambda" || s == "elambda") return SweepFamily::ELambda;
  if (s == "cor10_t" || s == "cor10t") return SweepFamily::Cor10T;
  throw InputError("unknown sweep family '" + s + "' (expected e_lambda or cor10_t)");
}

struct SweepRow {
  double parameter = 0.0;
  double hs_sq = 0.0;
  double comp_hs_sq = 0.0;
  double sum = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double closed_hs_sq = 0.0;
  double closed_comp_hs_sq = 0.0;
};

struct SweepResult {
  Index n = 0, d = 0;
  SweepFamily family = SweepFamily::ELambda;
  std::vector<SweepRow> rows;
  double max_closed_form_dev = 0.0;
  bool monotone = false;
  bool endpoints_hit = false;
  bool pass = false;
};

/// Closed forms of the two squared norms along each family, x in [0, 1]:
///   e_lambda: ||E||^2 = n(1-x^2)/d + n x^2,   ||E~||^2 = n^2(1-x^2)/d + n^2 x^2
///   cor10_t:  ||E||^2 = n^2 x^2 + n(1-x^2)/d, ||E~||^2 = n^2(1-x^2)/d + n x^2
inline std::pair<double, double> sweep_closed_form(SweepFamily f, Index n, Index d,
                                                   double x) {
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double x2 = x * x;
  if (f == SweepFamily::ELambda)
    return {nn * (1.0 - x2) / dd + nn * x2, nn * nn * (1.0 - x2) / dd + nn * nn * x2};
  return {nn * nn * x2 + nn * (1.0 - x2) / dd, nn * nn * (1.0 - x2) / dd + nn * x2};
}

inline SweepResult range_sweep(Index n, Index d, int grid_size, SweepFamily family,
                               std::uint64_t seed) {
  require(n >= 1 && d >= 1, "range_sweep: dimensions must be >= 1");
  require(grid_size >= 2, "range_sweep: grid size must be >= 2");
  if (family == SweepFamily::Cor10T)
    require(n <= d, "range_sweep: the cor10_t family requires n <= d");
  SweepResult res;
  res.n = n;
  res.d = d;
  res.family = family;
  ComplexVector psi;
  if (family == SweepFamily::ELambda) {
    RandomSource rs(seed, "sweep_psi");
    psi = sample_sphere(d, rs);
  }
  const double lower = norm_sum_lower_bound(n, d);
  const double upper = norm_sum_upper_bound(n);
  for (int g = 0; g < grid_size; ++g) {
    const double x = static_cast<double>(g) / static_cast<double>(grid_size - 1);
    const KrausChannel e = family == SweepFamily::ELambda ? gen_e_lambda(x, psi, n, d)
                                                          : gen_cor10_t(x, n, d);
    SweepRow row;
    row.parameter = x;
    row.hs_sq = hs_norm_sq(e);
    row.comp_hs_sq = comp_hs_norm_sq(e);
    row.sum = row.hs_sq + row.comp_hs_sq;
    row.lower_bound = lower;
    row.upper_bound = upper;
    std::tie(row.closed_hs_sq, row.closed_comp_hs_sq) = sweep_closed_form(family, n, d, x);
    res.max_closed_form_dev = std::max({res.max_closed_form_dev,
                                        std::abs(row.hs_sq - row.closed_hs_sq),
                                        std::abs(row.comp_hs_sq - row.closed_comp_hs_sq)});
    res.rows.push_back(row);
  }
  res.monotone = true;
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    if (res.rows[i].sum < res.rows[i - 1].sum - kExactTol) res.monotone = false;
  res.endpoints_hit = std::abs(res.rows.front().sum - lower) <= kExactTol &&
                      std::abs(res.rows.back().sum - upper) <= kExactTol;
  res.pass = res.max_closed_form_dev <= kExactTol && res.monotone && res.endpoints_hit;
  return res;
}

// ---------------------------------------------------------------------------
// Random isometric channels

struct RandomIsometricForm {
  std::vector<double> weights;
  std::vector<ComplexMatrix> isometries;
};

/// Recovers X -> sum_j p_j V_j X V_j^* from Kraus operators A_j = sqrt(p_j)
/// V_j: requires every A_j^* A_j to be a positive multiple of I.
inline RandomIsometricForm random_isometric_form(const KrausChannel& e) {
  const Index n = e.dim_in();
  require(n <= e.dim_out(), "cor10a_check: requires n <= d");
  RandomIsometricForm f;
  for (std::size_t j = 0; j < e.size(); ++j) {
    const ComplexMatrix g = e[j].adjoint() * e[j];
    const double p = g.trace().real() / static_cast<double>(n);
    if (!(p > kInputTol) || max_abs(g - p * identity(n)) > kInputTol)
      throw InputError("cor10a_check: Kraus operator " + std::to_string(j) +
                       " is not a scaled isometry; channel is not in random-isometric form");
    f.weights.push_back(p);
    f.isometries.push_back(e[j] / std::sqrt(p));
  }
  return f;
}

struct Cor10aReport {
  Index n = 0, d = 0;
  double comp_hs_sq = 0.0;
  double lower_bound = 0.0;  // n^2 / d
  double upper_bound = 0.0;  // n
  bool bounds_hold = false;
  bool at_upper = false;
  /// At the upper bound: all V_j V_j^* coincide (pairwise, within 1e-8).
  bool common_range = false;
  /// E(X) = V Upsilon(X) V^* with V = V_1 and Upsilon(X) = sum_j p_j U_j X U_j^*,
  /// U_j = V_1^* V_j.
  ComplexMatrix isometry;
  std::vector<ComplexMatrix> unitaries;
  std::vector<double> weights;
  double max_unitary_defect = 0.0;
  double reconstruction_defect = 0.0;
  bool pass = false;
};

inline Cor10aReport cor10a_check(const KrausChannel& e) {
  require_trace_preserving(e, "cor10a_check");
  const RandomIsometricForm form = random_isometric_form(e);
  Cor10aReport r;
  r.n = e.dim_in();
  r.d = e.dim_out();
  const double n = static_cast<double>(r.n);
  r.comp_hs_sq = comp_hs_norm_sq(e);
  r.lower_bound = n * n / static_cast<double>(r.d);
  r.upper_bound = n;
  r.bounds_hold = r.comp_hs_sq >= r.lower_bound - kBoundTol &&
                  r.comp_hs_sq <= r.upper_bound + kBoundTol;
  r.at_upper = r.comp_hs_sq >= r.upper_bound - kBoundTol;
  r.pass = r.bounds_hold;
  if (!r.at_upper) return r;

  const std::size_t m = form.isometries.size();
  std::vector<ComplexMatrix> ranges;
  for (const ComplexMatrix& v : form.isometries) ranges.push_back(v * v.adjoint());
  r.common_range = true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (max_abs_diff(ranges[i], ranges[j]) > kBoundTol) r.common_range = false;
  if (r.common_range) {
    r.isometry = form.isometries.front();
    r.weights = form.weights;
    for (const ComplexMatrix& v : form.isometries) {
      ComplexMatrix u = r.isometry.adjoint() * v;
      r.max_unitary_defect = std::max(r.max_unitary_defect,
                                      max_abs(u.adjoint() * u - identity(r.n)));
      r.reconstruction_defect = std::max(r.reconstruction_defect,
                                         max_abs_diff(r.isometry * u, v));
      r.unitaries.push_back(std::move(u));
    }
  }
  r.pass = r.bounds_hold && r.common_range && r.max_unitary_defect <= kBoundTol &&
           r.reconstruction_defect <= kBoundTol;
  return r;
}

// ---------------------------------------------------------------------------
// Broadcasting maps M_n -> M_n (x) M_n

inline double broadcast_p(Index n) {
  const double nn = static_cast<double>(n);
  return 4.0 * (nn + 1.0) / ((nn + 2.0) * (nn + 2.0));
}

/// CB(X) = (S (X (x) I) + (X (x) I) S) / 2.
inline ComplexMatrix broadcast_cb(const ComplexMatrix& x) {
  const Index n = x.rows();
  const ComplexMatrix s = swap_operator(n);
  const ComplexMatrix xi = kron(x, identity(n));
  return (s * xi + xi * s) / 2.0;
}

/// M'(X) = tr(X) I/n (x) I/n.
inline ComplexMatrix broadcast_m_prime(const ComplexMatrix& x) {
  const double n = static_cast<double>(x.rows());
  return x.trace() * identity(x.rows() * x.rows()) / (n * n);
}

/// Closed form of M(X) = n int tr(rho_phi X) rho_phi (x) rho_phi dphi with
/// rho_phi = ((n+2) phi phi^* - I) / 2:
///   (n+2)^2 / (8(n+1)) [S (X (x) I) + (X (x) I) S] - tr(X) I (x) I / (4(n+1)).
inline ComplexMatrix broadcast_m_closed(const ComplexMatrix& x) {
  const Index n = x.rows();
  const double nn = static_cast<double>(n);
  const ComplexMatrix s = swap_operator(n);
  const ComplexMatrix xi = kron(x, identity(n));
  return (nn + 2.0) * (nn + 2.0) / (8.0 * (nn + 1.0)) * (s * xi + xi * s) -
         x.trace() * identity(n * n) / (4.0 * (nn + 1.0));
}

/// M(X) obtained by expanding rho_phi (x) rho_phi and integrating each term
/// with the sphere-integral evaluators.
inline ComplexMatrix broadcast_m_from_integrals(const ComplexMatrix& x) {
  const Index n = x.rows();
  const double nn = static_cast<double>(n);
  const Complex tx = x.trace();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix id2 = identity(n * n);
  const ComplexMatrix w2 = exact_weighted2(x);
  return nn * std::pow(nn + 2.0, 3) / 8.0 * exact_third_matrix_weighted(x) +
         nn * (nn + 2.0) / 8.0 * exact_first_scalar(x) * id2 -
         nn * (nn + 2.0) * (nn + 2.0) / 8.0 * (kron(w2, id) + kron(id, w2)) -
         nn * tx / 8.0 * id2 -
         nn * (nn + 2.0) * (nn + 2.0) * tx / 8.0 * exact_moment(n, 2) +
         nn * (nn + 2.0) * tx / 8.0 * (kron(id / nn, id) + kron(id, id / nn));
}

/// Monte Carlo estimate of the superoperator matrix (n^4 x n^2) of M.
inline MCEstimate mc_broadcast_m(Index n, std::size_t samples, std::uint64_t seed) {
  require(n >= 1, "mc_broadcast_m: n must be >= 1");
  const Index n2 = n * n;
  auto factory = [n, n2] {
    return [n, n2, phi = ComplexVector(n), rho = ComplexMatrix(n, n),
            rr = ComplexMatrix(n2, n2)](RandomSource& rs, ComplexMatrix& out) mutable {
      const double nn = static_cast<double>(n);
      sample_sphere(rs, phi);
      rho = ((nn + 2.0) * (phi * phi.adjoint()) - identity(n)) / 2.0;
      rr = kron(rho, rho);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          const Complex w = nn * rho(j, i);  // tr(rho e_i e_j^*)
          for (Index a = 0; a < n2; ++a)
            for (Index b = 0; b < n2; ++b) out(a * n2 + b, i * n + j) = w * rr(a, b);
        }
    };
  };
  return monte_carlo(n2 * n2, n2, samples, seed, "broadcast_m", factory);
}

struct BroadcastReport {
  Index n = 0;
  double p = 0.0;
  /// max over matrix units of |CB(X) - p M(X) - (1-p) M'(X)|.
  double identity_defect = 0.0;
  /// max over matrix units of |M_closed(X) - M_integrals(X)|.
  double integral_route_defect = 0.0;
  /// max over matrix units of |tr M(X) - tr X|.
  double trace_defect = 0.0;
  std::optional<McComparison> mc;
  std::size_t mc_samples = 0;
  bool pass = false;
};

inline BroadcastReport broadcasting_verify(Index n, std::size_t mc_samples,
                                           std::uint64_t seed, double sigma = 5.0,
                                           double tol = kExactTol) {
  require(n >= 1, "broadcasting_verify: n must be >= 1");
  BroadcastReport r;
  r.n = n;
  r.p = broadcast_p(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const ComplexMatrix x = matrix_unit(n, n, i, j);
      const ComplexMatrix m = broadcast_m_closed(x);
      r.identity_defect = std::max(
          r.identity_defect,
          max_abs(broadcast_cb(x) - r.p * m - (1.0 - r.p) * broadcast_m_prime(x)));
      r.integral_route_defect =
          std::max(r.integral_route_defect, max_abs_diff(m, broadcast_m_from_integrals(x)));
      r.trace_defect = std::max(r.trace_defect, std::abs(m.trace() - x.trace()));
    }
  r.pass = r.identity_defect <= tol && r.integral_route_defect <= tol &&
           r.trace_defect <= tol;
  if (mc_samples > 0) {
    const MCEstimate est = mc_broadcast_m(n, mc_samples, seed);
    const ComplexMatrix exact = superoperator_from_map(
        n, n * n, [](const ComplexMatrix& x) { return broadcast_m_closed(x); });
    r.mc = compare(est, exact, sigma);
    r.mc_samples = est.samples;
    r.pass = r.pass && r.mc->pass;
  }
  return r;
}

}  // namespace chm
