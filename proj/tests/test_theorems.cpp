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
#include <vector>

#include "test_util.hpp"

namespace chm {
namespace {

using testing::MatrixNear;
using testing::random_unit;
using testing::random_unitary;

ComplexMatrix haar_iso(Index d, Index n, std::uint64_t seed) {
  RandomSource rs(seed, "test_isometry");
  return haar_isometry(d, n, rs);
}

TEST(Theorem1, Examples) {
  const Theorem1Report dep = theorem1_report(gen_depolarizing(3, 2), 0, 0);
  EXPECT_NEAR(dep.sum, 6.0, 1e-10);
  EXPECT_NEAR(dep.lower_bound, 6.0, 1e-15);
  EXPECT_NEAR(dep.upper_bound, 12.0, 1e-15);
  EXPECT_EQ(dep.classification, ChannelClass::Depolarizing);
  EXPECT_TRUE(dep.classification_confirmed);
  EXPECT_FALSE(dep.mc_check.has_value());

  const Theorem1Report id = theorem1_report(gen_identity(3), 0, 0);
  EXPECT_NEAR(id.sum, 12.0, 1e-10);
  EXPECT_EQ(id.classification, ChannelClass::Isometric);

  const ComplexVector psi = random_unit(2, 1);
  const Theorem1Report mid = theorem1_report(gen_e_lambda(0.5, psi, 2, 2), 100000, 2);
  EXPECT_NEAR(mid.sum, 3.75, 1e-10);
  EXPECT_EQ(mid.classification, ChannelClass::Interior);
  EXPECT_TRUE(mid.bounds_hold);
  ASSERT_TRUE(mid.mc_check.has_value());
  EXPECT_TRUE(mid.mc_check->pass);
  EXPECT_NEAR(mid.mc_check->predicted, 3.75 / 6.0, 1e-12);

  const Theorem1Report rep = theorem1_report(gen_replacement(random_unit(3, 3), 2), 0, 0);
  EXPECT_NEAR(rep.sum, 6.0, 1e-10);
  EXPECT_EQ(rep.classification, ChannelClass::Replacement);
  EXPECT_TRUE(rep.classification_confirmed);

  const Theorem1Report iso = theorem1_report(gen_isometric(haar_iso(4, 2, 4)), 0, 0);
  EXPECT_EQ(iso.classification, ChannelClass::Isometric);
}

TEST(Theorem1, BoundsOverEnsemble) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const KrausChannel e = ensemble_channel(11, i);
    const Theorem1Report r = theorem1_report(e, 20000, 100 + i);
    EXPECT_TRUE(r.bounds_hold) << "index " << i;
    EXPECT_TRUE(r.classification_confirmed) << "index " << i;
    ASSERT_TRUE(r.mc_check.has_value());
    EXPECT_TRUE(r.mc_check->pass) << "index " << i;
  }
}

TEST(Theorem1, OutputPurityOfPureInputs) {
  const KrausChannel e = gen_random_cptp(2, 3, 2, 5);
  for (int s = 0; s < 10; ++s) {
    const ComplexVector x = random_unit(2, 50 + s);
    const ComplexMatrix rho = chm::apply(e, x * x.adjoint());
    EXPECT_NEAR(output_purity(e, x), (rho * rho).trace().real(), 1e-12);
  }
  const MCEstimate est = mc_output_purity(e, 100000, 6);
  EXPECT_TRUE(compare(est, (hs_norm_sq(e) + comp_hs_norm_sq(e)) / 6.0, 5.0).pass);
}

TEST(Theorem1, UpperBoundClassificationMatchesPurity) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Index n = 1 + static_cast<Index>(s % 3), d = 1 + static_cast<Index>((s / 3) % 4);
    std::vector<KrausChannel> channels;
    channels.push_back(gen_replacement(random_unit(d, 60 + s), n));
    if (n <= d) channels.push_back(gen_isometric(haar_iso(d, n, 70 + s)));
    for (const KrausChannel& e : channels) {
      const Theorem1Report r = theorem1_report(e, 0, 0);
      EXPECT_NEAR(r.sum, r.upper_bound, 1e-10);
      EXPECT_TRUE(r.classification_confirmed);
      EXPECT_NE(r.classification, ChannelClass::Interior);
    }
  }
}

TEST(Equivalence, LowerBoundConditions) {
  for (Index n = 1; n <= 4; ++n)
    for (Index d = 1; d <= 4; ++d) {
      const EquivalenceReport r = theorem1_equiv_check(n, d, 7);
      EXPECT_TRUE(r.pass) << n << "x" << d;
      EXPECT_TRUE(r.depolarizing.all());
      EXPECT_EQ(r.perturbed_checked, 50u);
      EXPECT_EQ(r.violations, 0u);
    }
  const LowerBoundConditions c = lower_bound_conditions(gen_e_lambda(0.1, random_unit(2, 8), 2, 2));
  EXPECT_TRUE(c.none());
  EXPECT_THROW(theorem1_equiv_check(5, 2, 0), InputError);
}

TEST(PurityClassify, Families) {
  const PurityVerdict id = purity_classify(gen_identity(3));
  EXPECT_EQ(id.kind, PurityKind::Isometric);
  EXPECT_LE(isometry_defect(id.isometry), 1e-12);

  const ComplexMatrix v = haar_iso(3, 2, 9);
  const PurityVerdict iso = purity_classify(remix(gen_isometric(v), random_unitary(1, 10)));
  EXPECT_EQ(iso.kind, PurityKind::Isometric);
  EXPECT_LE(phase_insensitive_diff(iso.isometry, v), 1e-10);

  const ComplexVector psi = random_unit(3, 11);
  const PurityVerdict rep = purity_classify(gen_replacement(psi, 2));
  EXPECT_EQ(rep.kind, PurityKind::Replacement);
  EXPECT_LE(phase_insensitive_diff(rep.psi, psi), 1e-10);

  const PurityVerdict dep = purity_classify(gen_depolarizing(2, 2));
  EXPECT_EQ(dep.kind, PurityKind::Not);
  EXPECT_NEAR(dep.witness_purity, 0.5, 1e-12);
  EXPECT_NEAR(dep.purity_defect, 0.5, 1e-12);
  EXPECT_NEAR(dep.witness.norm(), 1.0, 1e-12);
}

TEST(PurityClassify, RandomChannelsOfRankTwoAreNotPure) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const KrausChannel e = gen_random_cptp(3, 3, 2, 80 + s);
    const PurityVerdict v = purity_classify(e);
    EXPECT_EQ(v.kind, PurityKind::Not);
    EXPECT_GT(v.purity_defect, 1e-6);
    EXPECT_NEAR(output_purity(e, v.witness), v.witness_purity, 1e-12);
  }
}

TEST(Sweep, ELambdaExample) {
  const SweepResult r = range_sweep(2, 2, 3, SweepFamily::ELambda, 12);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_NEAR(r.rows[0].sum, 3.0, 1e-10);
  EXPECT_NEAR(r.rows[1].sum, 3.75, 1e-10);
  EXPECT_NEAR(r.rows[2].sum, 6.0, 1e-10);
  EXPECT_TRUE(r.pass);
}

TEST(Sweep, Cor10TExample) {
  const SweepResult r = range_sweep(2, 3, 11, SweepFamily::Cor10T, 0);
  ASSERT_EQ(r.rows.size(), 11u);
  EXPECT_NEAR(r.rows.front().sum, 2.0, 1e-10);
  EXPECT_NEAR(r.rows.back().sum, 6.0, 1e-10);
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.pass);
}

TEST(Sweep, AllDimensions) {
  for (Index n = 1; n <= 4; ++n)
    for (Index d = 1; d <= 4; ++d) {
      EXPECT_TRUE(range_sweep(n, d, 21, SweepFamily::ELambda, 13).pass) << n << "x" << d;
      if (n <= d) EXPECT_TRUE(range_sweep(n, d, 21, SweepFamily::Cor10T, 13).pass) << n << "x" << d;
    }
}

TEST(Sweep, Errors) {
  EXPECT_THROW(range_sweep(2, 2, 1, SweepFamily::ELambda, 0), InputError);
  EXPECT_THROW(range_sweep(3, 2, 5, SweepFamily::Cor10T, 0), InputError);
  EXPECT_THROW(parse_sweep_family("linear"), InputError);
  EXPECT_EQ(parse_sweep_family("cor10t"), SweepFamily::Cor10T);
  EXPECT_EQ(parse_sweep_family("e_lambda"), SweepFamily::ELambda);
}

TEST(Cor10a, CommonRangeRecovered) {
  const Index n = 2, d = 3;
  const ComplexMatrix v = haar_iso(d, n, 14);
  const std::vector<double> w{0.2, 0.3, 0.5};
  std::vector<ComplexMatrix> isos;
  for (int i = 0; i < 3; ++i) isos.push_back(v * random_unitary(n, 15 + i));
  const Cor10aReport r = cor10a_check(gen_random_isometric(w, isos));
  EXPECT_NEAR(r.comp_hs_sq, 2.0, 1e-10);
  EXPECT_NEAR(r.lower_bound, 4.0 / 3.0, 1e-15);
  EXPECT_TRUE(r.at_upper);
  EXPECT_TRUE(r.common_range);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_unitary_defect, 1e-10);
  EXPECT_LE(r.reconstruction_defect, 1e-10);
}

TEST(Cor10a, DistinctRangesBelowUpper) {
  const Cor10aReport r = cor10a_check(gen_cor10_t(0.5, 2, 3));
  EXPECT_TRUE(r.bounds_hold);
  EXPECT_FALSE(r.at_upper);
  EXPECT_TRUE(r.pass);
  const Cor10aReport low = cor10a_check(gen_cor10_t(0.0, 2, 4));
  EXPECT_NEAR(low.comp_hs_sq, low.lower_bound, 1e-10);
  const Cor10aReport dep = cor10a_check(gen_depolarizing(2, 2));
  EXPECT_NEAR(dep.comp_hs_sq, dep.lower_bound, 1e-10);
  EXPECT_THROW(cor10a_check(gen_random_cptp(2, 3, 2, 17)), InputError);
  EXPECT_THROW(cor10a_check(gen_depolarizing(3, 2)), InputError);
}

TEST(Broadcasting, ExactIdentities) {
  EXPECT_NEAR(broadcast_p(2), 0.75, 1e-15);
  for (Index n = 1; n <= 4; ++n) {
    const BroadcastReport r = broadcasting_verify(n, 0, 0);
    EXPECT_TRUE(r.pass) << "n=" << n;
    EXPECT_LE(r.identity_defect, 1e-10);
    EXPECT_LE(r.integral_route_defect, 1e-10);
    EXPECT_FALSE(r.mc.has_value());
  }
}

TEST(Broadcasting, MonteCarlo) {
  const BroadcastReport r = broadcasting_verify(2, 100000, 16);
  ASSERT_TRUE(r.mc.has_value());
  EXPECT_TRUE(r.pass);
}

}  // namespace
}  // namespace chm
