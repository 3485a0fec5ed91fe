#include <gtest/gtest.h>

#include <set>

#include "opineq/decompose.hpp"
#include "opineq/generators.hpp"
#include "opineq/rng.hpp"
#include "test_util.hpp"

using namespace opineq;
using namespace opineq::testing;

TEST(Rng, DeriveSeedIsPureAndSpreads) {
  EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(7, 0, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(derive_seed(7, 0, 0), derive_seed(7, 1, 0));
  EXPECT_NE(derive_seed(7, 0, 0), derive_seed(8, 0, 0));
}

TEST(Generate, DeterministicInSeed) {
  for (auto e : {Ensemble::Ginibre, Ensemble::HaarUnitary, Ensemble::WishartPsd, Ensemble::RandomNormal,
                 Ensemble::RandomContraction, Ensemble::RandomSemiHyponormal}) {
    const GeneratorConfig cfg{e, 1.0};
    EXPECT_EQ(generate(cfg, 4, 99), generate(cfg, 4, 99)) << to_string(e);
    EXPECT_NE(generate(cfg, 4, 99), generate(cfg, 4, 100)) << to_string(e);
    EXPECT_EQ(ensemble_from_string(to_string(e)), e);
  }
}

TEST(Generate, ScaleMultiplies) {
  const CMat a = generate({Ensemble::Ginibre, 1.0}, 3, 5);
  const CMat b = generate({Ensemble::Ginibre, 2.5}, 3, 5);
  EXPECT_LE(max_diff(a * 2.5, b), 1e-14);
}

TEST(Generate, EnsembleInvariants) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + seed % 6;
    EXPECT_LE(unitarity_defect(generate({Ensemble::HaarUnitary, 1.0}, n, seed)), 1e-10);

    const CMat w = generate({Ensemble::WishartPsd, 1.0}, n, seed);
    EXPECT_GE(lambda_min(HermMat(w)), -1e-12);

    const CMat nm = generate({Ensemble::RandomNormal, 1.0}, n, seed);
    EXPECT_LE(max_diff(nm * nm.adjoint(), nm.adjoint() * nm), 1e-10 * (1 + nm.max_abs() * nm.max_abs()));

    EXPECT_LE(operator_norm(generate({Ensemble::RandomContraction, 1.0}, n, seed)), 1.0 + 1e-12);

    const CMat sh = generate({Ensemble::RandomSemiHyponormal, 1.0}, n, seed);
    EXPECT_TRUE(loewner_leq(comodulus(sh), modulus(sh)).pass);
  }
}

TEST(Generate, ContractionNormRange) {
  Rng rng(3);
  int at_one = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const double nrm = operator_norm(random_contraction(3, rng));
    EXPECT_GE(nrm, 0.2 - 1e-12);
    EXPECT_LE(nrm, 1.0 + 1e-12);
    if (std::abs(nrm - 1.0) < 1e-12) ++at_one;
  }
  EXPECT_GT(at_one, 50);
}

TEST(Generate, RankDeficientHasRank) {
  Rng rng(4);
  for (std::size_t r = 0; r <= 4; ++r) {
    const CMat z = random_rank_deficient(5, r, rng);
    const auto ev = eigenvalues(modulus(z));
    std::size_t rank = 0;
    for (double v : ev)
      if (v > 1e-9 * (1 + ev[0])) ++rank;
    EXPECT_EQ(rank, r);
  }
}

TEST(Generate, IsometryColumns) {
  Rng rng(5);
  const CMat s = random_isometry(5, 3, rng);
  EXPECT_LE(max_diff(s.adjoint() * s, CMat::identity(3)), 1e-13);
}

TEST(Generate, HaarFirstMoment) {
  // E|U_00|^2 = 1/n for Haar unitaries.
  Rng rng(6);
  double acc = 0.0;
  const int reps = 4000;
  for (int rep = 0; rep < reps; ++rep) acc += std::norm(haar_unitary(4, rng)(0, 0));
  EXPECT_NEAR(acc / reps, 0.25, 0.02);
}

TEST(Generate, UnknownEnsembleName) {
  try {
    (void)ensemble_from_string("gaussian_orthogonal");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}
