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

// Registry of verifiable formulas. Each id runs a set of exact checks
// (closed form against an independent evaluation path, collapses at A = I,
// linearity, unitary covariance) and one or more Monte Carlo comparisons.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "channel_moments/channel.hpp"
#include "channel_moments/generators.hpp"
#include "channel_moments/integrals.hpp"
#include "channel_moments/report.hpp"
#include "channel_moments/theorems.hpp"
#include "channel_moments/twirl.hpp"

namespace chm {

struct VerifyOptions {
  Index n = 2;
  int k = 2;
  std::size_t samples = 200000;
  std::uint64_t seed = 0;
  double tol = kExactTol;
  double sigma = 5.0;
};

/// Accumulates named exact defects and MC comparisons into a report.
class ReportBuilder {
 public:
  ReportBuilder(std::string check, const VerifyOptions& opt) : opt_(opt) {
    report_.check = std::move(check);
    report_.tolerance = opt.tol;
    report_.pass = true;
    report_.params = Json{{"n", opt.n},     {"samples", opt.samples}, {"seed", opt.seed},
                          {"tol", opt.tol}, {"sigma", opt.sigma}};
    report_.values["exact"] = Json::object();
    report_.values["mc"] = Json::object();
  }

  void param(const std::string& key, Json value) { report_.params[key] = std::move(value); }
  void value(const std::string& key, Json value) { report_.values[key] = std::move(value); }

  void exact(const std::string& name, double defect) { exact(name, defect, opt_.tol); }

  void exact(const std::string& name, double defect, double tol) {
    const bool ok = defect <= tol;
    report_.values["exact"][name] = Json{{"defect", defect}, {"pass", ok}};
    report_.pass = report_.pass && ok;
  }

  void mc(const std::string& name, const MCEstimate& est, const ComplexMatrix& exact_value) {
    const McComparison c = compare(est, exact_value, opt_.sigma);
    report_.values["mc"][name] = to_json(c, est.samples, opt_.sigma);
    report_.pass = report_.pass && c.pass;
  }

  void mc(const std::string& name, const MCEstimate& est, Complex exact_value) {
    mc(name, est, ComplexMatrix::Constant(1, 1, exact_value));
  }

  void mc_comparison(const std::string& name, const McComparison& c, std::size_t samples) {
    report_.values["mc"][name] = to_json(c, samples, opt_.sigma);
    report_.pass = report_.pass && c.pass;
  }

  void flag(const std::string& name, bool ok) {
    report_.values["flags"][name] = ok;
    report_.pass = report_.pass && ok;
  }

  VerificationReport finish() { return std::move(report_); }

 private:
  VerifyOptions opt_;
  VerificationReport report_;
};

namespace detail {

/// Seeded random test inputs shared by all formula checks.
struct VerifyInputs {
  ComplexMatrix a, b, c, u;  // n x n
  ComplexMatrix big_a, big_b, big_c;  // n^2 x n^2
  Complex alpha, beta;

  VerifyInputs(Index n, std::uint64_t seed) {
    RandomSource rs(seed, "verify_inputs");
    a = ginibre(n, n, rs);
    b = ginibre(n, n, rs);
    c = ginibre(n, n, rs);
    u = sample_unitary(n, rs);
    big_a = ginibre(n * n, n * n, rs);
    big_b = ginibre(n * n, n * n, rs);
    big_c = kron(ginibre(n, n, rs), ginibre(n, n, rs));
    alpha = rs.gaussian();
    beta = rs.gaussian();
  }
};

inline ComplexMatrix moment2_closed(Index n) {
  const double nn = static_cast<double>(n);
  return (identity(n * n) + swap_operator(n)) / (nn * (nn + 1.0));
}

inline ComplexMatrix conj_by(const ComplexMatrix& u, const ComplexMatrix& x) {
  return u * x * u.adjoint();
}

inline void require_verify_dim(Index n, Index max_n, const std::string& id) {
  if (n < 1 || n > max_n)
    throw InputError("verify " + id + ": n must be in [1, " + std::to_string(max_n) + "]");
}

}  // namespace detail

inline VerificationReport verify_prop3a(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 5, "prop3a");
  const detail::VerifyInputs in(n, opt.seed);
  ReportBuilder rb("prop3a", opt);
  const ComplexMatrix m2 = exact_moment(n, 2);
  rb.exact("closed_form_vs_permutation_sum", max_abs_diff(m2, detail::moment2_closed(n)));
  rb.exact("trace_one", std::abs(m2.trace() - 1.0));
  rb.exact("pairing_with_AxB", std::abs(hs_inner(kron(in.a, in.b), m2) -
                                        exact_pair_scalar(in.a, in.b)));
  rb.exact("covariance", max_abs_diff(detail::conj_by(kron(in.u, in.u), m2), m2));
  rb.mc("moment2", mc_moment(n, 2, opt.samples, opt.seed), m2);
  return rb.finish();
}

inline VerificationReport verify_prop3b(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 8, "prop3b");
  const detail::VerifyInputs in(n, opt.seed);
  ReportBuilder rb("prop3b", opt);
  const Complex v = exact_pair_scalar(in.a, in.b);
  rb.value("exact_value", complex_json(v));
  rb.exact("identity_collapse", std::abs(exact_pair_scalar(identity(n), identity(n)) - 1.0));
  rb.exact("symmetry", std::abs(v - exact_pair_scalar(in.b, in.a)));
  rb.exact("linearity", std::abs(exact_pair_scalar(in.alpha * in.a + in.beta * in.c, in.b) -
                                 (in.alpha * v + in.beta * exact_pair_scalar(in.c, in.b))));
  rb.exact("covariance", std::abs(exact_pair_scalar(detail::conj_by(in.u, in.a),
                                                    detail::conj_by(in.u, in.b)) - v));
  rb.exact("via_weighted2", std::abs((exact_weighted2(in.a) * in.b).trace() - v));
  rb.exact("via_moment2", std::abs((kron(in.a, in.b) * exact_moment(n, 2)).trace() - v));
  rb.mc("pair_scalar", mc_weighted_moment({in.a, in.b}, n, 0, opt.samples, opt.seed), v);
  return rb.finish();
}

inline VerificationReport verify_prop3c(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 4, "prop3c");
  const detail::VerifyInputs in(n, opt.seed);
  ReportBuilder rb("prop3c", opt);
  const double nn = static_cast<double>(n);
  double unit_defect = 0.0;
  ComplexMatrix rebuilt = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const ComplexMatrix eij = matrix_unit(n, n, i, j);
      ComplexMatrix closed = eij;
      if (i == j) closed += identity(n);
      closed /= nn * (nn + 1.0);
      unit_defect = std::max(unit_defect, max_abs_diff(exact_weighted2(eij), closed));
      // A = sum_ij tr(A e_i e_j^*) e_j e_i^*
      rebuilt += in.a(j, i) * ((i == j ? identity(n) : ComplexMatrix::Zero(n, n)) +
                               matrix_unit(n, n, j, i)) / (nn * (nn + 1.0));
    }
  rb.exact("matrix_units", unit_defect);
  rb.exact("basis_expansion_gives_general_form", max_abs_diff(rebuilt, exact_weighted2(in.a)));
  rb.exact("identity_collapse", max_abs_diff(exact_weighted2(identity(n)), identity(n) / nn));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const ComplexMatrix eij = matrix_unit(n, n, i, j);
      rb.mc("unit_" + std::to_string(i) + std::to_string(j),
            mc_weighted_moment({eij}, n, 1, opt.samples, opt.seed + static_cast<std::uint64_t>(i * n + j)),
            exact_weighted2(eij));
    }
  return rb.finish();
}

inline VerificationReport verify_prop3d(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 8, "prop3d");
  const detail::VerifyInputs in(n, opt.seed);
  ReportBuilder rb("prop3d", opt);
  const ComplexMatrix w = exact_weighted2(in.a);
  rb.exact("identity_collapse",
           max_abs_diff(exact_weighted2(identity(n)), identity(n) / static_cast<double>(n)));
  rb.exact("linearity", max_abs_diff(exact_weighted2(in.alpha * in.a + in.beta * in.b),
                                     in.alpha * w + in.beta * exact_weighted2(in.b)));
  rb.exact("covariance", max_abs_diff(exact_weighted2(detail::conj_by(in.u, in.a)),
                                      detail::conj_by(in.u, w)));
  rb.exact("via_moment2_partial_trace",
           max_abs_diff(partial_trace(kron(in.a, identity(n)) * exact_moment(n, 2), {n, n}, {1}), w));
  rb.mc("weighted2", mc_weighted_moment({in.a}, n, 1, opt.samples, opt.seed), w);
  return rb.finish();
}

inline VerificationReport verify_cor6a(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 8, "cor6a");
  const detail::VerifyInputs in(n, opt.seed);
  ReportBuilder rb("cor6a", opt);
  const double v = exact_abs_sq(in.a);
  rb.value("exact_value", v);
  rb.exact("identity_collapse", std::abs(exact_abs_sq(identity(n)) - 1.0));
  rb.exact("pair_with_adjoint", std::abs(exact_pair_scalar(in.a, in.a.adjoint()) - v));
  rb.exact("phase_invariance", std::abs(exact_abs_sq(std::polar(1.0, 0.7) * in.a) - v));
  rb.exact("covariance", std::abs(exact_abs_sq(detail::conj_by(in.u, in.a)) - v));
  rb.exact("homogeneity", std::abs(exact_abs_sq(in.alpha * in.a) - std::norm(in.alpha) * v),
           opt.tol * std::max(1.0, std::norm(in.alpha)));
  rb.mc("abs_sq", mc_weighted_moment({in.a, in.a.adjoint()}, n, 0, opt.samples, opt.seed), v);
  return rb.finish();
}

inline VerificationReport verify_cor6b(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 8, "cor6b");
  const detail::VerifyInputs in(n, opt.seed);
  ReportBuilder rb("cor6b", opt);
  const Complex v = exact_first_scalar(in.a);
  rb.value("exact_value", complex_json(v));
  rb.exact("identity_collapse", std::abs(exact_first_scalar(identity(n)) - 1.0));
  rb.exact("linearity", std::abs(exact_first_scalar(in.alpha * in.a + in.beta * in.b) -
                                 (in.alpha * v + in.beta * exact_first_scalar(in.b))));
  rb.exact("trace_of_weighted2", std::abs(exact_weighted2(in.a).trace() - v));
  rb.exact("pair_with_identity", std::abs(exact_pair_scalar(in.a, identity(n)) - v));
  rb.mc("first_scalar", mc_weighted_moment({in.a}, n, 0, opt.samples, opt.seed), v);
  return rb.finish();
}

inline VerificationReport verify_cor7a(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 4, "cor7a");
  const detail::VerifyInputs in(n, opt.seed);
  ReportBuilder rb("cor7a", opt);
  const ComplexMatrix id = identity(n);
  const ComplexMatrix v = exact_sandwich1(in.big_a);
  rb.exact("identity_collapse", max_abs_diff(exact_sandwich1(identity(n * n)),
                                             identity(n * n) / static_cast<double>(n)));
  rb.exact("product_input", max_abs_diff(exact_sandwich1(kron(in.a, in.b)),
                                         kron(exact_weighted2(in.a), in.b)));
  rb.exact("linearity", max_abs_diff(exact_sandwich1(in.alpha * in.big_a + in.beta * in.big_b),
                                     in.alpha * v + in.beta * exact_sandwich1(in.big_b)));
  rb.exact("covariance", max_abs_diff(exact_sandwich1(detail::conj_by(kron(in.u, id), in.big_a)),
                                      detail::conj_by(kron(in.u, id), v)));
  rb.mc("sandwich1", mc_sandwich1(in.big_a, opt.samples, opt.seed), v);
  return rb.finish();
}

inline VerificationReport verify_cor7b(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 4, "cor7b");
  const detail::VerifyInputs in(n, opt.seed);
  ReportBuilder rb("cor7b", opt);
  const ComplexMatrix v = exact_sandwich2(in.big_a);
  const double nn = static_cast<double>(n);
  rb.exact("identity_collapse",
           max_abs_diff(exact_sandwich2(identity(n * n)), identity(n * n) / (nn * nn)));
  rb.exact("product_input", max_abs_diff(exact_sandwich2(kron(in.a, in.b)),
                                         kron(exact_weighted2(in.a), exact_weighted2(in.b))));
  rb.exact("linearity", max_abs_diff(exact_sandwich2(in.alpha * in.big_a + in.beta * in.big_b),
                                     in.alpha * v + in.beta * exact_sandwich2(in.big_b)));
  const ComplexMatrix uu = kron(in.u, in.u);
  rb.exact("covariance", max_abs_diff(exact_sandwich2(detail::conj_by(uu, in.big_a)),
                                      detail::conj_by(uu, v)));
  rb.mc("sandwich2", mc_sandwich2(in.big_a, opt.samples, opt.seed), v);
  return rb.finish();
}

/// Dimension of the symmetric subspace of (C^n)^{(x)k}, C(n + k - 1, k).
inline double symmetric_dim(Index n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<double>(n + k - i) / static_cast<double>(i);
  return r;
}

inline VerificationReport verify_prop8(const VerifyOptions& opt) {
  const Index n = opt.n;
  const int k = opt.k;
  require(n >= 1, "verify prop8: n must be >= 1");
  if (k < 1 || k > 4) throw InputError("verify prop8: k must be in [1, 4]");
  ReportBuilder rb("prop8", opt);
  rb.param("k", k);
  const TensorSpace space(n, k);
  const ComplexMatrix sum = permutation_sum(space);
  const ComplexMatrix p = sum / factorial(k);
  const ComplexMatrix m = exact_moment(n, k);
  rb.exact("projector_hermitian", hermitian_defect(p));
  rb.exact("projector_idempotent", max_abs_diff(p * p, p));
  rb.exact("projector_trace", std::abs(p.trace().real() - symmetric_dim(n, k)));
  rb.exact("numerator_square", max_abs_diff(sum * sum, factorial(k) * sum),
           opt.tol * factorial(k));
  rb.exact("moment_trace_one", std::abs(m.trace() - 1.0));
  if (k == 1) rb.exact("k1_collapse", max_abs_diff(m, identity(n) / static_cast<double>(n)));
  if (k == 2) rb.exact("k2_closed_form", max_abs_diff(m, detail::moment2_closed(n)));
  rb.mc("moment", mc_moment(n, k, opt.samples, opt.seed), m);
  return rb.finish();
}

inline VerificationReport verify_thm9a(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 4, "thm9a");
  const detail::VerifyInputs in(n, opt.seed);
  ReportBuilder rb("thm9a", opt);
  const ComplexMatrix id = identity(n);
  const ComplexMatrix v = exact_third_scalar_weighted(in.a, in.b);
  rb.exact("identity_collapse",
           max_abs_diff(exact_third_scalar_weighted(id, id), id / static_cast<double>(n)));
  rb.exact("A_identity_gives_weighted2",
           max_abs_diff(exact_third_scalar_weighted(id, in.b), exact_weighted2(in.b)));
  rb.exact("symmetry", max_abs_diff(v, exact_third_scalar_weighted(in.b, in.a)));
  rb.exact("linearity",
           max_abs_diff(exact_third_scalar_weighted(in.alpha * in.a + in.beta * in.c, in.b),
                        in.alpha * v + in.beta * exact_third_scalar_weighted(in.c, in.b)));
  rb.exact("covariance", max_abs_diff(exact_third_scalar_weighted(detail::conj_by(in.u, in.a),
                                                                  detail::conj_by(in.u, in.b)),
                                      detail::conj_by(in.u, v)));
  const std::vector<ComplexMatrix> w{in.a, in.b};
  rb.exact("via_permutation_sum", max_abs_diff(v, exact_weighted_moment(w, n, 3)));
  rb.mc("third_scalar", mc_weighted_moment({in.a, in.b}, n, 1, opt.samples, opt.seed), v);
  return rb.finish();
}

inline VerificationReport verify_thm9b(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 4, "thm9b");
  const detail::VerifyInputs in(n, opt.seed);
  ReportBuilder rb("thm9b", opt);
  const ComplexMatrix v = exact_third_matrix_weighted(in.a);
  rb.exact("identity_collapse",
           max_abs_diff(exact_third_matrix_weighted(identity(n)), exact_moment(n, 2)));
  rb.exact("partial_trace_gives_weighted2",
           max_abs_diff(partial_trace(v, {n, n}, {0}), exact_weighted2(in.a)));
  rb.exact("linearity", max_abs_diff(exact_third_matrix_weighted(in.alpha * in.a + in.beta * in.b),
                                     in.alpha * v + in.beta * exact_third_matrix_weighted(in.b)));
  const ComplexMatrix uu = kron(in.u, in.u);
  rb.exact("covariance", max_abs_diff(exact_third_matrix_weighted(detail::conj_by(in.u, in.a)),
                                      detail::conj_by(uu, v)));
  const std::vector<ComplexMatrix> w{in.a};
  rb.exact("via_permutation_sum", max_abs_diff(v, exact_weighted_moment(w, n, 3)));
  rb.mc("third_matrix", mc_weighted_moment({in.a}, n, 2, opt.samples, opt.seed), v);
  return rb.finish();
}

inline VerificationReport verify_remark3(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 4, "remark3");
  const detail::VerifyInputs in(n, opt.seed);
  ReportBuilder rb("remark3", opt);
  const ComplexMatrix id = identity(n);
  const ComplexMatrix v = exact_fourth_weighted(in.a, in.b);
  rb.exact("identity_collapse", max_abs_diff(exact_fourth_weighted(id, id), exact_moment(n, 2)));
  rb.exact("A_identity_gives_thm9b",
           max_abs_diff(exact_fourth_weighted(id, in.b), exact_third_matrix_weighted(in.b)));
  rb.exact("symmetry", max_abs_diff(v, exact_fourth_weighted(in.b, in.a)));
  rb.exact("linearity",
           max_abs_diff(exact_fourth_weighted(in.alpha * in.a + in.beta * in.c, in.b),
                        in.alpha * v + in.beta * exact_fourth_weighted(in.c, in.b)));
  const ComplexMatrix uu = kron(in.u, in.u);
  rb.exact("covariance", max_abs_diff(exact_fourth_weighted(detail::conj_by(in.u, in.a),
                                                            detail::conj_by(in.u, in.b)),
                                      detail::conj_by(uu, v)));
  if (n * n * n * n <= kMaxDenseOperatorDim)
    rb.exact("expanded_vs_s4_sum", max_abs_diff(v, exact_fourth_weighted_by_permutations(in.a, in.b)));
  rb.mc("fourth", mc_weighted_moment({in.a, in.b}, n, 2, opt.samples, opt.seed), v);
  return rb.finish();
}

/// Residual bound for a Monte Carlo twirl and the slack on n lambda + n^2 mu = n.
inline constexpr double kTwirlResidualTol = 0.05;
inline constexpr double kTwirlTraceTol = 0.02;

inline VerificationReport verify_twirl(const VerifyOptions& opt) {
  const Index n = opt.n;
  detail::require_verify_dim(n, 4, "twirl");
  ReportBuilder rb("twirl", opt);
  const double nn = static_cast<double>(n);

  const TwirlFit id_fit = twirl_fit(superoperator_matrix(gen_identity(n)), opt.samples, opt.seed);
  rb.exact("identity_residual", id_fit.residual);
  if (id_fit.identifiable) {
    rb.exact("identity_lambda", std::abs(id_fit.lambda - 1.0));
    rb.exact("identity_mu", std::abs(id_fit.mu));
  } else {
    rb.exact("identity_lambda_plus_mu", std::abs(id_fit.lambda + id_fit.mu - 1.0));
  }

  const TwirlFit dep_fit =
      twirl_fit(superoperator_matrix(gen_depolarizing(n, n)), opt.samples, opt.seed);
  rb.exact("depolarizing_residual", dep_fit.residual);
  if (dep_fit.identifiable) {
    rb.exact("depolarizing_lambda", std::abs(dep_fit.lambda));
    rb.exact("depolarizing_mu", std::abs(dep_fit.mu - 1.0 / nn));
  } else {
    rb.exact("depolarizing_lambda_plus_mu", std::abs(dep_fit.lambda + dep_fit.mu - 1.0 / nn));
  }

  // Random channel: the twirl fixes tr(T) and <vec I|T|vec I>, so the exact
  // covariant limit is the direct least-squares fit of T.
  const KrausChannel rnd = gen_random_cptp(n, n, std::min<Index>(2, n * n), opt.seed);
  const ComplexMatrix t = superoperator_matrix(rnd);
  const TwirlFit limit = fit_covariant(t);
  const MCEstimate twirled = twirl_superoperator(t, opt.samples, opt.seed);
  const TwirlFit fit = fit_covariant(twirled.mean);
  ComplexMatrix limit_matrix = limit.lambda * identity(n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) limit_matrix(a * n + a, b * n + b) += limit.mu;
  rb.value("random_fit", Json{{"lambda", complex_json(fit.lambda)},
                              {"mu", complex_json(fit.mu)},
                              {"residual", fit.residual},
                              {"exact_lambda", complex_json(limit.lambda)},
                              {"exact_mu", complex_json(limit.mu)}});
  rb.exact("random_residual", fit.residual, kTwirlResidualTol);
  rb.exact("random_trace_constraint", std::abs(nn * fit.lambda + nn * nn * fit.mu - nn),
           kTwirlTraceTol);
  rb.mc("random_twirl", twirled, limit_matrix);
  return rb.finish();
}

inline Json to_json(const Theorem1Report& r) {
  Json j{{"n", r.n},
         {"d", r.d},
         {"hs_sq", r.hs_sq},
         {"comp_hs_sq", r.comp_hs_sq},
         {"sum", r.sum},
         {"lower_bound", r.lower_bound},
         {"upper_bound", r.upper_bound},
         {"bounds_hold", r.bounds_hold},
         {"classification", to_string(r.classification)},
         {"classification_confirmed", r.classification_confirmed}};
  if (r.mc_check)
    j["mc_check"] = Json{{"estimate", r.mc_check->estimate},
                         {"std_error", r.mc_check->std_error},
                         {"predicted", r.mc_check->predicted},
                         {"deviation", r.mc_check->deviation},
                         {"samples", r.mc_check->samples},
                         {"pass", r.mc_check->pass}};
  return j;
}

inline VerificationReport verify_thm1(const KrausChannel& e, const VerifyOptions& opt) {
  ReportBuilder rb("thm1", opt);
  rb.param("n", e.dim_in());
  rb.param("d", e.dim_out());
  const Theorem1Report r = theorem1_report(e, opt.samples, opt.seed, opt.sigma);
  rb.value("theorem1", to_json(r));
  rb.flag("bounds_hold", r.bounds_hold);
  rb.flag("classification_confirmed", r.classification_confirmed);
  if (r.mc_check) rb.flag("mc_bridge", r.mc_check->pass);
  return rb.finish();
}

inline VerificationReport verify_eq51(const VerifyOptions& opt) {
  detail::require_verify_dim(opt.n, 4, "eq51");
  ReportBuilder rb("eq51", opt);
  const BroadcastReport r = broadcasting_verify(opt.n, opt.samples, opt.seed, opt.sigma, opt.tol);
  rb.value("p", r.p);
  rb.exact("identity", r.identity_defect);
  rb.exact("closed_form_vs_integrals", r.integral_route_defect);
  rb.exact("trace_preservation", r.trace_defect);
  if (r.mc) rb.mc_comparison("broadcast_m", *r.mc, r.mc_samples);
  return rb.finish();
}

/// Formula ids that need only VerifyOptions.
inline const std::map<std::string, std::function<VerificationReport(const VerifyOptions&)>>&
formula_registry() {
  static const std::map<std::string, std::function<VerificationReport(const VerifyOptions&)>>
      registry{{"prop3a", verify_prop3a}, {"prop3b", verify_prop3b}, {"prop3c", verify_prop3c},
               {"prop3d", verify_prop3d}, {"cor6a", verify_cor6a},   {"cor6b", verify_cor6b},
               {"cor7a", verify_cor7a},   {"cor7b", verify_cor7b},   {"prop8", verify_prop8},
               {"thm9a", verify_thm9a},   {"thm9b", verify_thm9b},   {"remark3", verify_remark3},
               {"twirl", verify_twirl},   {"eq51", verify_eq51}};
  return registry;
}

inline VerificationReport verify_formula(const std::string& id, const VerifyOptions& opt) {
  const auto& reg = formula_registry();
  const auto it = reg.find(id);
  if (it == reg.end()) throw InputError("unknown formula id '" + id + "'");
  return it->second(opt);
}

}  // namespace chm
