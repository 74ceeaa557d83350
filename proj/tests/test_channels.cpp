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


#include <cmath>
#include <limits>
#include <vector>

#include "test_util.hpp"

namespace chm {
namespace {

using testing::MatrixNear;
using testing::random_matrix;
using testing::random_unit;
using testing::random_unitary;

KrausChannel adjoint_channel(const KrausChannel& e) {
  std::vector<ComplexMatrix> k;
  for (const ComplexMatrix& a : e.kraus()) k.push_back(a.adjoint());
  return KrausChannel(e.dim_out(), e.dim_in(), std::move(k));
}

TEST(KrausChannel, RejectsBadShapes) {
  EXPECT_THROW(KrausChannel(2, 2, {identity(2), identity(3)}), InputError);
  EXPECT_THROW(KrausChannel(2, 2, {}), InputError);
  ComplexMatrix bad = identity(2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(KrausChannel(2, 2, {bad}), InputError);
}

TEST(ValidateCptp, Examples) {
  EXPECT_EQ(validate_cptp(gen_identity(3)).tp_defect, 0.0);
  EXPECT_LE(validate_cptp(gen_depolarizing(2, 2)).tp_defect, 1e-12);
  const CptpReport half = validate_cptp(KrausChannel(2, 2, {identity(2) / 2.0}));
  EXPECT_NEAR(half.tp_defect, 0.75, 1e-15);
  EXPECT_TRUE(half.cp);
}

TEST(Apply, NamedFamilies) {
  const ComplexMatrix x = random_matrix(3, 3, 1);
  EXPECT_TRUE(MatrixNear(chm::apply(gen_identity(3), x), x, 0.0));
  for (Index d = 1; d <= 4; ++d)
    EXPECT_TRUE(MatrixNear(chm::apply(gen_depolarizing(3, d), x),
                           x.trace() * identity(d) / static_cast<double>(d), 1e-10));
  const ComplexVector psi = random_unit(4, 2);
  EXPECT_TRUE(MatrixNear(chm::apply(gen_replacement(psi, 3), x), x.trace() * psi * psi.adjoint(),
                         1e-12));
  EXPECT_THROW(chm::apply(gen_identity(2), x), InputError);
}

TEST(Apply, PreservesTraceAndPositivity) {
  const KrausChannel e = gen_random_cptp(3, 2, 4, 3);
  const ComplexMatrix g = random_matrix(3, 3, 4);
  const ComplexMatrix rho = g * g.adjoint();
  const ComplexMatrix out = chm::apply(e, rho);
  EXPECT_NEAR(std::abs(out.trace() - rho.trace()), 0.0, 1e-10);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(out);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
}

TEST(AdjointApply, Duality) {
  const KrausChannel e = gen_random_cptp(3, 4, 5, 5);
  const ComplexMatrix x = random_matrix(3, 3, 6), y = random_matrix(4, 4, 7);
  EXPECT_NEAR(std::abs(hs_inner(chm::apply(e, x), y) - hs_inner(x, adjoint_apply(e, y))), 0.0,
              1e-10);
  EXPECT_TRUE(MatrixNear(adjoint_apply(e, identity(4)), identity(3), 1e-10));
  EXPECT_TRUE(MatrixNear(adjoint_apply(gen_identity(3), x), x, 0.0));
}

TEST(AdjointApply, DepolarizingOnBasis) {
  // <E(X), Y> = <X, E*(Y)> for all matrix units X determines E*(Y).
  const Index n = 3, d = 2;
  const KrausChannel e = gen_depolarizing(n, d);
  const ComplexMatrix y = random_matrix(d, d, 8);
  ComplexMatrix dual(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      dual(i, j) = std::conj(hs_inner(chm::apply(e, matrix_unit(n, n, i, j)), y));
  EXPECT_TRUE(MatrixNear(adjoint_apply(e, y), dual, 1e-12));
  EXPECT_TRUE(MatrixNear(adjoint_apply(e, y), y.trace() * identity(n) / static_cast<double>(d),
                         1e-12));
}

TEST(Choi, Examples) {
  const ChoiMatrix id = choi_matrix(gen_identity(2));
  EXPECT_NEAR(id.matrix().trace().real(), 2.0, 1e-15);
  EXPECT_EQ(choi_rank(gen_identity(2)), 1u);

  const ChoiMatrix dep = choi_matrix(gen_depolarizing(3, 3));
  EXPECT_TRUE(MatrixNear(dep.matrix(), identity(9) / 3.0, 1e-12));
  EXPECT_EQ(choi_rank(gen_depolarizing(3, 3)), 9u);

  const ComplexVector psi = random_unit(3, 9);
  EXPECT_TRUE(MatrixNear(choi_matrix(gen_replacement(psi, 2)).matrix(),
                         kron(psi * psi.adjoint(), identity(2)), 1e-12));
  EXPECT_EQ(choi_rank(gen_replacement(psi, 2)), 2u);
}

TEST(Choi, PartialTraceOverOutputIsIdentityForTp) {
  const KrausChannel e = gen_random_cptp(3, 2, 3, 10);
  EXPECT_TRUE(MatrixNear(partial_trace(choi_matrix(e).matrix(), {2, 3}, {1}), identity(3), 1e-10));
}

TEST(KrausFromChoi, RoundTripAndCounts) {
  const KrausChannel dep = kraus_from_choi(choi_matrix(gen_depolarizing(2, 3)));
  EXPECT_EQ(dep.size(), 6u);
  for (const ComplexMatrix& a : dep.kraus()) EXPECT_NEAR(a.squaredNorm(), 1.0 / 3.0, 1e-12);
  EXPECT_TRUE(MatrixNear(choi_matrix(dep).matrix(), choi_matrix(gen_depolarizing(2, 3)).matrix(), 1e-9));

  EXPECT_EQ(kraus_from_choi(choi_matrix(gen_identity(3))).size(), 1u);

  const ComplexMatrix a1 = random_matrix(2, 2, 11), a2 = random_matrix(2, 2, 12);
  const KrausChannel two(2, 2, {a1, a2, 0.5 * a1 - 2.0 * a2, 3.0 * a2});
  const KrausChannel minimal = minimize_kraus(two);
  EXPECT_EQ(minimal.size(), 2u);
  EXPECT_TRUE(MatrixNear(choi_matrix(minimal).matrix(), choi_matrix(two).matrix(), 1e-9));
}

TEST(KrausFromChoi, RejectsNonPsd) {
  ComplexMatrix m = identity(4);
  m(0, 0) = -1.0;
  EXPECT_THROW(decompose_choi(ChoiMatrix(2, 2, m)), InputError);
  EXPECT_THROW(ChoiMatrix(2, 2, random_matrix(4, 4, 13)), InputError);
}

TEST(KrausFromChoi, ReportsMarginalEigenvalues) {
  ComplexMatrix m = identity(4) / 2.0;
  m(3, 3) = 1e-9;
  const ChoiDecomposition dec = decompose_choi(ChoiMatrix(2, 2, m));
  EXPECT_EQ(dec.channel.size(), 4u);
  EXPECT_EQ(dec.marginal_eigenvalues.size(), 1u);
}

TEST(Complementary, MatchesMatrixOfTraces) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const KrausChannel e = ensemble_channel(14, s);
    const KrausChannel c = complementary(e);
    EXPECT_EQ(c.dim_out(), static_cast<Index>(e.size()));
    const ComplexMatrix x = random_matrix(e.dim_in(), e.dim_in(), 15 + s);
    EXPECT_TRUE(MatrixNear(chm::apply(c, x), complementary_apply_direct(e, x), 1e-10));
  }
}

TEST(Complementary, Examples) {
  const ComplexMatrix x = random_matrix(3, 3, 16);
  const ComplexMatrix out = chm::apply(complementary(gen_identity(3)), x);
  ASSERT_EQ(out.rows(), 1);
  EXPECT_NEAR(std::abs(out(0, 0) - x.trace()), 0.0, 1e-12);

  const KrausChannel dep = gen_depolarizing(2, 2);
  EXPECT_NEAR(chm::apply(complementary(dep), identity(2)).trace().real(), 2.0, 1e-12);
  EXPECT_NEAR(hs_norm_sq(complementary(dep)), 2.0, 1e-12);

  const KrausChannel e = gen_random_cptp(3, 2, 4, 17);
  const ComplexVector phi = random_unit(3, 18);
  const ComplexMatrix c = chm::apply(complementary(e), phi * phi.adjoint());
  for (std::size_t i = 0; i < e.size(); ++i)
    EXPECT_NEAR(std::abs(c(i, i) - (e[i] * phi).squaredNorm()), 0.0, 1e-12);
}

TEST(Norms, Examples) {
  EXPECT_NEAR(hs_norm_sq(gen_identity(2)), 4.0, 1e-12);
  EXPECT_NEAR(comp_hs_norm_sq(gen_identity(2)), 2.0, 1e-12);
  EXPECT_NEAR(hs_norm_sq(gen_depolarizing(2, 2)), 1.0, 1e-12);
  EXPECT_NEAR(comp_hs_norm_sq(gen_depolarizing(2, 2)), 2.0, 1e-12);
  const KrausChannel el = gen_e_lambda(0.5, random_unit(2, 19), 2, 2);
  EXPECT_NEAR(hs_norm_sq(el), 1.25, 1e-12);
  EXPECT_NEAR(comp_hs_norm_sq(el), 2.5, 1e-12);
}

TEST(Norms, SuperoperatorExamples) {
  EXPECT_NEAR(superoperator_matrix(gen_identity(3)).squaredNorm(), 9.0, 1e-12);
  EXPECT_NEAR(superoperator_matrix(gen_depolarizing(3, 2)).squaredNorm(), 1.5, 1e-12);
  const KrausChannel e = gen_random_cptp(2, 3, 3, 20);
  EXPECT_TRUE(MatrixNear(superoperator_matrix(adjoint_channel(e)),
                         superoperator_matrix(e).adjoint(), 1e-12));
}

TEST(Norms, SuperoperatorColumnsAreImagesOfMatrixUnits) {
  const KrausChannel e = gen_random_cptp(2, 3, 2, 21);
  const ComplexMatrix t = superoperator_matrix(e);
  const ComplexMatrix via_map = superoperator_from_map(
      2, 3, [&](const ComplexMatrix& x) { return chm::apply(e, x); });
  EXPECT_TRUE(MatrixNear(t, via_map, 1e-12));
}

TEST(Norms, P2pExamples) {
  for (Index n = 1; n <= 4; ++n)
    for (Index d = 1; d <= 4; ++d) {
      const KrausChannel dep = gen_depolarizing(n, d);
      const double r = static_cast<double>(n) / static_cast<double>(d);
      EXPECT_NEAR(p2p_norm(dep, 1.0), 1.0, 1e-10);
      EXPECT_NEAR(p2p_norm(dep, 2.0), std::sqrt(r), 1e-10);
      EXPECT_NEAR(p2p_norm(dep, std::numeric_limits<double>::infinity()), r, 1e-10);
    }
  for (PNorm p : {PNorm::One, PNorm::Two, PNorm::Infinity})
    EXPECT_NEAR(p2p_norm(gen_identity(3), p), 1.0, 1e-10);
  const KrausChannel e = gen_random_cptp(3, 2, 3, 22);
  EXPECT_GE(p2p_norm(e, 2.0), std::sqrt(1.5) - 1e-10);
  EXPECT_GE(p2p_norm(e, PNorm::Infinity), 1.5 - 1e-10);
  EXPECT_THROW(p2p_norm(e, 3.0), InputError);
  EXPECT_THROW(p2p_norm(KrausChannel(2, 2, {identity(2) / 2.0}), 1.0), InputError);
}

TEST(Generators, DepolarizingStructure) {
  EXPECT_EQ(gen_depolarizing(2, 2).size(), 4u);
  EXPECT_LE(validate_cptp(gen_depolarizing(2, 2)).tp_defect, 1e-12);
  const KrausChannel one = gen_depolarizing(1, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(std::abs(one[0](0, 0)), 1.0, 1e-15);
  EXPECT_LE(validate_cptp(gen_depolarizing(4, 2)).tp_defect, 1e-12);
}

TEST(Generators, VijBasis) {
  for (auto [n, d] : std::vector<std::pair<Index, Index>>{{1, 1}, {2, 2}, {2, 3}, {3, 3}, {2, 4}}) {
    const auto v = gen_vij_basis(n, d);
    ASSERT_EQ(v.size(), static_cast<std::size_t>(n * d));
    for (std::size_t a = 0; a < v.size(); ++a) {
      EXPECT_LE(isometry_defect(v[a]), 1e-12);
      for (std::size_t b = 0; b < v.size(); ++b) {
        const Complex ip = hs_inner(v[a], v[b]);
        EXPECT_NEAR(std::abs(ip - (a == b ? static_cast<double>(n) : 0.0)), 0.0, 1e-12);
      }
    }
  }
  EXPECT_THROW(gen_vij_basis(3, 2), InputError);
}

TEST(Generators, IsometricAndReplacement) {
  EXPECT_TRUE(MatrixNear(gen_isometric(identity(3))[0], identity(3), 0.0));
  ComplexMatrix w = ComplexMatrix::Zero(3, 2);
  w(0, 0) = w(1, 1) = 1.0;
  const KrausChannel e = gen_isometric(w);
  EXPECT_NEAR(hs_norm_sq(e) + comp_hs_norm_sq(e), 6.0, 1e-12);
  RandomSource rs(23, "iso");
  const KrausChannel h = gen_isometric(haar_isometry(4, 3, rs));
  EXPECT_NEAR(hs_norm_sq(h) + comp_hs_norm_sq(h), 12.0, 1e-12);
  EXPECT_THROW(gen_isometric(2.0 * w), InputError);

  const ComplexVector psi = random_unit(3, 24);
  const KrausChannel r = gen_replacement(psi, 2);
  EXPECT_NEAR(hs_norm_sq(r) + comp_hs_norm_sq(r), 6.0, 1e-12);
  EXPECT_THROW(gen_replacement(2.0 * psi, 2), InputError);
  const KrausChannel r1 = gen_replacement(psi, 1);
  EXPECT_LE(isometry_defect(r1[0]), 1e-12);
}

TEST(Generators, ELambda) {
  const ComplexVector psi = random_unit(3, 25);
  const KrausChannel lo = gen_e_lambda(0.0, psi, 2, 3);
  EXPECT_NEAR(hs_norm_sq(lo) + comp_hs_norm_sq(lo), 2.0, 1e-12);
  const KrausChannel hi = gen_e_lambda(1.0, psi, 2, 3);
  EXPECT_NEAR(hs_norm_sq(hi) + comp_hs_norm_sq(hi), 6.0, 1e-12);
  const KrausChannel mid = gen_e_lambda(0.5, random_unit(2, 26), 2, 2);
  EXPECT_NEAR(hs_norm_sq(mid) + comp_hs_norm_sq(mid), 3.75, 1e-12);
  EXPECT_THROW(gen_e_lambda(1.5, psi, 2, 3), InputError);
}

TEST(Generators, RandomIsometric) {
  RandomSource rs(27, "iso");
  const ComplexMatrix v1 = haar_isometry(4, 2, rs), v2 = haar_isometry(4, 2, rs);
  const KrausChannel e = gen_random_isometric({0.5, 0.5}, {v1, v2});
  EXPECT_LE(comp_hs_norm_sq(e), 2.0 + 1e-12);
  EXPECT_GE(comp_hs_norm_sq(e), 1.0 - 1e-12);
  EXPECT_TRUE(MatrixNear(gen_random_isometric({1.0}, {v1})[0], v1, 0.0));
  const KrausChannel t0 = gen_cor10_t(0.0, 2, 3);
  EXPECT_NEAR(hs_norm_sq(t0) + comp_hs_norm_sq(t0), 2.0, 1e-12);
  EXPECT_THROW(gen_random_isometric({0.5, 0.6}, {v1, v2}), InputError);
  EXPECT_THROW(gen_random_isometric({1.0}, {2.0 * v1}), InputError);
}

TEST(Generators, RandomCptp) {
  const KrausChannel a = gen_random_cptp(3, 2, 4, 28), b = gen_random_cptp(3, 2, 4, 28);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(MatrixNear(a[i], b[i], 0.0));
  EXPECT_LE(validate_cptp(a).tp_defect, 1e-10);
  const KrausChannel iso = gen_random_cptp(2, 3, 1, 29);
  EXPECT_NEAR(hs_norm_sq(iso) + comp_hs_norm_sq(iso), 6.0, 1e-10);
  EXPECT_THROW(gen_random_cptp(3, 2, 1, 30), InputError);
  EXPECT_THROW(gen_random_cptp(2, 2, 5, 30), InputError);
}

// Properties over the seeded ensemble.

TEST(Properties, KrausRemixInvariance) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const KrausChannel e = ensemble_channel(31, s);
    const ComplexMatrix mu = random_unitary(static_cast<Index>(e.size()), 32 + s);
    const KrausChannel f = remix(e, mu);
    const ComplexMatrix x = random_matrix(e.dim_in(), e.dim_in(), 33 + s);
    EXPECT_TRUE(MatrixNear(chm::apply(f, x), chm::apply(e, x), 1e-10));
    EXPECT_NEAR(hs_norm_sq(f), hs_norm_sq(e), 1e-10);
    EXPECT_NEAR(comp_hs_norm_sq(f), comp_hs_norm_sq(e), 1e-10);
  }
}

TEST(Properties, HsNormMatchesSuperoperator) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const KrausChannel e = ensemble_channel(34, s);
    EXPECT_NEAR(hs_norm_sq(e), superoperator_matrix(e).squaredNorm(), 1e-10);
  }
}

TEST(Properties, ComplementaryNormThreeWays) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const KrausChannel e = ensemble_channel(35, s);
    double direct = 0.0;
    for (const ComplexMatrix& ai : e.kraus())
      for (const ComplexMatrix& aj : e.kraus())
        direct += (aj.adjoint() * ai * ai.adjoint() * aj).trace().real();
    const double via_output = comp_hs_norm_sq(e);
    const double via_comp = hs_norm_sq(complementary(e));
    EXPECT_NEAR(via_output, direct, 1e-10);
    EXPECT_NEAR(via_output, via_comp, 1e-10);
  }
}

TEST(Properties, StinespringConsistency) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Index n = 2 + static_cast<Index>(s % 2), d = 3, r = 2 + static_cast<Index>(s % 3);
    RandomSource rs(36, "stinespring", s);
    const ComplexMatrix v = haar_isometry(d * r, n, rs);
    std::vector<ComplexMatrix> kraus;
    for (Index i = 0; i < r; ++i) {
      ComplexMatrix a(d, n);
      for (Index row = 0; row < d; ++row) a.row(row) = v.row(row * r + i);
      kraus.push_back(a);
    }
    const KrausChannel e(n, d, kraus);
    const ComplexMatrix x = random_matrix(n, n, 37 + s);
    const ComplexMatrix big = v * x * v.adjoint();
    EXPECT_TRUE(MatrixNear(chm::apply(e, x), partial_trace(big, {d, r}, {0}), 1e-12));
    const ComplexMatrix env = partial_trace(big, {d, r}, {1});
    EXPECT_TRUE(MatrixNear(chm::apply(complementary(e), x), env, 1e-12));
    const ComplexMatrix env_id = partial_trace(v * v.adjoint(), {d, r}, {1});
    EXPECT_NEAR(comp_hs_norm_sq(e), hs_norm_sq(complementary(e)), 1e-10);
    EXPECT_NEAR(env_id.trace().real(), static_cast<double>(n), 1e-10);
  }
}

TEST(Properties, HsRanges) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const KrausChannel e = ensemble_channel(38, s);
    const double n = static_cast<double>(e.dim_in()), d = static_cast<double>(e.dim_out());
    const double hs = hs_norm_sq(e), comp = comp_hs_norm_sq(e);
    EXPECT_GE(hs, n / d - 1e-8);
    EXPECT_LE(hs, hs_sq_upper_bound(e.dim_in(), e.dim_out()) + 1e-8);
    EXPECT_GE(comp, n * n / d - 1e-8);
    EXPECT_LE(comp, n * n + 1e-8);
  }
}

}  // namespace
}  // namespace chm
