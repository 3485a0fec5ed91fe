#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "opineq/checks.hpp"
#include "opineq/decompose.hpp"
#include "opineq/generators.hpp"
#include "opineq/instances.hpp"
#include "test_util.hpp"

using namespace opineq;
using namespace opineq::testing;

namespace {

const CMat kZ{{0.0, 4.0}, {1.0, 0.0}};
const CMat kSwap{{0.0, 1.0}, {1.0, 0.0}};

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

PosMap transpose_sum(std::size_t n) { return PosMap::sum({PosMap::identity(n), PosMap::transpose(n)}); }

HermMat diag(std::initializer_list<double> v) { return HermMat::diagonal(std::vector<double>(v)); }

void expect_certificate_invariants(const Certificate& c) {
  const double bound = -c.tolerances.abs * (1.0 + operator_norm(c.rhs.mat()));
  EXPECT_EQ(c.pass, c.slack >= bound);
  if (c.witness_v) EXPECT_LE(unitarity_defect(*c.witness_v), 1e-9);
  const HermMat diff = c.rhs - c.lhs;
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(diff.mat()));
  EXPECT_NEAR(c.slack, es.eigenvalues()(0), 1e-9 * (1 + operator_norm(c.rhs.mat())));
}

}  // namespace

TEST(FunPair, ProductIsSquare) {
  const std::vector<FunPair> pairs = {FunPair::power(0),    FunPair::power(0.5), FunPair::power(-1),
                                      FunPair::power(1),    FunPair::power(2.5), FunPair::range(),
                                      FunPair::scaled(4.0), FunPair::scaled(0.1)};
  for (const auto& fp : pairs) {
    for (double t = 0.01; t < 20.0; t *= 1.37) EXPECT_NEAR(fp.f(t) * fp.g(t), t * t, 1e-12 * t * t) << fp.describe();
    EXPECT_EQ(fp.f(0.0) * fp.g(0.0), 0.0) << fp.describe();
  }
  EXPECT_EQ(FunPair::range().g(0.0), 0.0);
  EXPECT_EQ(FunPair::range().g(3.0), 1.0);
  expect_error(ErrorKind::DomainError, [] { (void)FunPair::scaled(0.0); });
}

TEST(FunPair, MatrixFormsOnKernel) {
  const HermMat d = diag({4, 0});
  EXPECT_LE(max_diff(FunPair::power(-1).apply_f(d).mat(), diag2(1, 0)), 1e-15);
  EXPECT_LE(max_diff(FunPair::power(-1).apply_g(d).mat(), diag2(16, 0)), 1e-13);
  EXPECT_LE(max_diff(FunPair::range().apply_g(d).mat(), diag2(1, 0)), 1e-15);
  EXPECT_LE(max_diff(FunPair::power(2).apply_g(d).mat(), diag2(0.25, 0)), 1e-15);
}

TEST(Domination, Examples) {
  Rng rng(1);
  const CMat a = random_contraction(3, rng);
  EXPECT_TRUE(domination_holds(a, HermMat::identity(3), FunPair::power(0)));

  const double k = 4.0;
  const CMat zk{{0.0, 1.0}, {k, 0.0}};
  EXPECT_TRUE(domination_holds(zk, modulus(zk) * std::sqrt(k), FunPair::scaled(k)));

  const CMat z = ginibre(3, 3, rng) * 3.0;
  EXPECT_FALSE(domination_holds(z, range_projection(z), FunPair::range()));
  const DominationResult r = domination(z, range_projection(z), FunPair::range());
  EXPECT_LT(r.f_slack, 0.0);
}

TEST(Domination, RangePairNeedsBothConditions) {
  Rng rng(2);
  const CMat z = random_rank_deficient(4, 2, rng);
  const HermMat zz = HermMat::symmetrize(z.adjoint() * z);
  const HermMat j = spectral_supremum(range_projection(z), zz);
  EXPECT_TRUE(domination_holds(z, j, FunPair::range()));
}

TEST(Witness, Examples) {
  Rng rng(3);
  const HermMat p = wishart_psd(3, 3, rng) + HermMat::identity(3);
  EXPECT_LE(max_diff(witness_unitary(PosMap::identity(3), p.mat()), CMat::identity(3)), 1e-10);
  EXPECT_LE(max_diff(witness_unitary(transpose_sum(2), kZ), kSwap), 1e-14);
  EXPECT_LE(max_diff(witness_unitary(PosMap::identity(2), CMat(2, 2)), CMat::identity(2)), 1e-15);
}

TEST(Witness, MakesImagePositive) {
  Rng rng(4);
  for (int rep = 0; rep < 30; ++rep) {
    const PosMap phi = random_map("kraus_sum", 3, 4, rng);
    const CMat z = ginibre(3, 3, rng);
    const CMat v = witness_unitary(phi, z);
    EXPECT_LE(max_diff(v * phi.apply(z), modulus(phi.apply(z)).mat()), 1e-9 * (1 + operator_norm(phi.apply(z))));
  }
}

TEST(RussoDye, Examples) {
  Rng rng(5);
  const CMat a = random_contraction(4, rng);
  const Certificate c = check_russo_dye(PosMap::identity(4), a);
  EXPECT_TRUE(c.pass);
  EXPECT_NEAR(c.lhs(0), operator_norm(a), 1e-12);
  EXPECT_NEAR(c.rhs(0), 1.0, 1e-14);

  const HermMat s = wishart_psd(4, 2, rng);
  const Certificate cs = check_russo_dye(PosMap::schur_multiplier(s), CMat::identity(4));
  EXPECT_TRUE(cs.pass);
  EXPECT_NEAR(cs.slack, 0.0, 1e-12);

  expect_error(ErrorKind::NotContraction, [] { (void)check_russo_dye(PosMap::identity(2), diag2(2, 0)); });
}

TEST(Arithmetic, ContractionWithIdentityMap) {
  Rng rng(6);
  const CMat a = random_contraction(3, rng);
  const Certificate c = check_arithmetic_domination(PosMap::identity(3), a, HermMat::identity(3), FunPair::power(0));
  EXPECT_TRUE(c.pass);
  EXPECT_LE(max_diff(c.rhs.mat(), CMat::identity(3)), 1e-12);
  EXPECT_LE(max_diff(c.lhs.mat(), modulus(a).mat()), 1e-12);
  expect_certificate_invariants(c);
}

TEST(Arithmetic, TransposeSumWithKatoSupremum) {
  const HermMat j = kato_supremum(kZ);
  EXPECT_LE(max_diff(j.mat(), diag2(4, 4)), 1e-12);
  const PosMap phi = transpose_sum(2);
  EXPECT_LE(max_diff(phi.apply(j.mat()), diag2(8, 8)), 1e-11);
  const Certificate c = check_arithmetic_domination(phi, kZ, j, FunPair::power(0));
  EXPECT_LE(max_diff(c.lhs.mat(), diag2(5, 5)), 1e-13);
  EXPECT_TRUE(c.pass);
  EXPECT_NEAR(c.slack, 3.0, 1e-11);
}

TEST(Arithmetic, RejectsViolatedHypothesis) {
  expect_error(ErrorKind::HypothesisViolated, [] {
    (void)check_arithmetic_domination(PosMap::identity(2), kZ, HermMat::identity(2), FunPair::power(0));
  });
}

TEST(Geometric, UnitaryWithIdentityMap) {
  Rng rng(7);
  const CMat u = haar_unitary(3, rng);
  const Certificate c = check_geometric_domination(PosMap::identity(3), u, HermMat::identity(3), FunPair::power(0));
  EXPECT_TRUE(c.pass);
  EXPECT_NEAR(c.slack, 0.0, 1e-9);
  EXPECT_LE(max_diff(c.lhs.mat(), CMat::identity(3)), 1e-9);
  EXPECT_LE(max_diff(c.rhs.mat(), CMat::identity(3)), 1e-9);
}

TEST(Geometric, RhsMatchesEigenMeanOracle) {
  Rng rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const PosMap phi = random_map("kraus_sum", 3, 3, rng);
    const CMat z = ginibre(3, 3, rng);
    const HermMat j = kato_supremum(z);
    const Certificate c = check_geometric_domination(phi, z, j, FunPair::power(0));
    ASSERT_TRUE(c.pass);
    expect_certificate_invariants(c);
    const CMat pj = phi.apply(j.mat());
    const CMat v = *c.witness_v;
    const CMat ref = eigen_geometric_mean(pj, v * pj * v.adjoint());
    EXPECT_LE(max_diff(c.rhs.mat(), ref), 1e-8 * (1 + ref.max_abs()));
    EXPECT_LE(max_diff(c.lhs.mat(), eigen_sqrt_psd(phi.apply(z).adjoint() * phi.apply(z))), 1e-9 * (1 + ref.max_abs()));
    EXPECT_TRUE(c.all_pass());
  }
}

TEST(Geometric, SideConditionsAllRecorded) {
  Rng rng(9);
  const CMat z = ginibre(3, 3, rng);
  const Certificate c =
      check_geometric_domination(random_map("compose", 3, 4, rng), z, kato_supremum(z), FunPair::power(0));
  std::vector<std::string> names;
  for (const auto& a : c.aux) names.push_back(a.name);
  for (const char* want : {"agm_sharpening", "block_positivity", "compressed_contraction", "psi_reconstruction",
                           "unitary_mean"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  }
  EXPECT_TRUE(c.all_pass());
}

TEST(Geometric, SharpnessDataPasses) {
  const CMat zk{{0.0, 1.0}, {4.0, 0.0}};
  const Certificate c =
      check_geometric_domination(PosMap::transpose(2), zk, modulus(zk) * 2.0, FunPair::scaled(4.0));
  EXPECT_TRUE(c.pass);
  expect_certificate_invariants(c);
}

TEST(Geometric, SingularImageUsesExactMean) {
  // Phi(J) singular: the mean is taken on the ranges.
  Rng rng(10);
  const CMat k = ginibre(3, 2, rng);
  const PosMap phi = PosMap::congruence(k.adjoint());  // M_3 -> M_2, rank 2
  const CMat a = random_rank_deficient(3, 1, rng);
  const HermMat j = kato_supremum(a);
  const PosMap low = PosMap::compose(PosMap::congruence(k), phi);  // M_3 -> M_3, rank 2
  const Certificate c = check_geometric_domination(low, a, j, FunPair::power(0));
  EXPECT_TRUE(c.used_singular_mean_limit);
  EXPECT_TRUE(c.pass);
}

TEST(Geometric, SharpeningChain) {
  Rng rng(11);
  for (const auto& fam : known_map_families()) {
    for (int rep = 0; rep < 10; ++rep) {
      const PosMap phi = random_map(fam, 3, 3, rng);
      const std::size_t n = phi.in_dim();
      const CMat z = ginibre(n, n, rng);
      const HermMat j = kato_supremum(z);
      const Certificate ar = check_arithmetic_domination(phi, z, j, FunPair::power(0));
      const Certificate ge = check_geometric_domination(phi, z, j, FunPair::power(0));
      EXPECT_TRUE(ar.pass) << fam;
      EXPECT_TRUE(ge.pass) << fam;
      EXPECT_TRUE(loewner_leq(ge.rhs, ar.rhs, Tolerance{1e-8, 1e-8, 1e-12}).pass) << fam;
    }
  }
}

TEST(Corollaries, NormalMatchesGeneralForm) {
  Rng rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const CMat n = random_normal_matrix(3, rng);
    const PosMap phi = random_map("kraus_sum", 3, 2, rng);
    const Certificate a = check_normal_corollary(phi, n);
    const Certificate b = check_geometric_domination(phi, n, modulus(n), FunPair::power(0));
    EXPECT_TRUE(a.pass);
    EXPECT_EQ(a.slack, b.slack);
    EXPECT_EQ(a.lhs.mat(), b.lhs.mat());
    EXPECT_EQ(a.rhs.mat(), b.rhs.mat());
  }
  expect_error(ErrorKind::HypothesisViolated, [] { (void)check_normal_corollary(PosMap::identity(2), kZ); });
}

TEST(Corollaries, NormalThroughPartialTraceOfDiagonalEmbedding) {
  Rng rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rng.index(3);
    CMat e1(2 * n, n), e2(2 * n, n);
    for (std::size_t i = 0; i < n; ++i) {
      e1(i, i) = 1.0;
      e2(n + i, i) = 1.0;
    }
    const PosMap embed = PosMap::kraus_sum({e1, e2});
    const PosMap phi = PosMap::compose(PosMap::partial_trace_2x2(n), embed);
    const CMat nn = random_normal_matrix(n, rng);
    EXPECT_LE(max_diff(phi.apply(nn), nn * 2.0), 1e-13);
    EXPECT_TRUE(check_normal_corollary(phi, nn).pass);
  }
}

TEST(Corollaries, ContractionMatchesGeneralForm) {
  Rng rng(14);
  const CMat a = random_contraction(4, rng);
  const PosMap phi = random_map("schur_multiplier", 4, 4, rng);
  const Certificate c1 = check_contraction_corollary(phi, a);
  const Certificate c2 = check_geometric_domination(phi, a, HermMat::identity(4), FunPair::power(0));
  EXPECT_TRUE(c1.pass);
  EXPECT_EQ(c1.slack, c2.slack);
  expect_error(ErrorKind::NotContraction, [] { (void)check_contraction_corollary(PosMap::identity(2), kZ); });
}

TEST(Corollaries, RangeForm) {
  Rng rng(15);
  const CMat z = random_rank_deficient(4, 3, rng);
  const HermMat j = spectral_supremum(range_projection(z), HermMat::symmetrize(z.adjoint() * z));
  EXPECT_TRUE(check_range_corollary(random_map("congruence", 4, 3, rng), z, j).pass);
}

TEST(Corollaries, ModulusRatioRadius) {
  const double k = 4.0;
  const CMat zk{{0.0, 1.0}, {k, 0.0}};
  EXPECT_NEAR(modulus_ratio_radius(zk), k, 1e-12);
  EXPECT_NEAR(modulus_ratio_radius(CMat::identity(3)), 1.0, 1e-14);
  Rng rng(16);
  const CMat nn = random_normal_matrix(3, rng);
  EXPECT_NEAR(modulus_ratio_radius(nn), 1.0, 1e-9);
  // Against a general eigenvalue oracle.
  const CMat z = ginibre(3, 3, rng);
  const EMat prod = to_eigen(comodulus(z).mat()) * to_eigen(modulus(z).mat()).inverse();
  Eigen::ComplexEigenSolver<EMat> ces(prod);
  EXPECT_NEAR(modulus_ratio_radius(z), ces.eigenvalues().cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Corollaries, SpectralRadiusForm) {
  Rng rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + rng.index(3);
    const PosMap phi = random_map("kraus_sum", n, 3, rng);
    const Certificate c = check_spectral_radius_corollary(phi, ginibre(n, n, rng));
    EXPECT_TRUE(c.pass) << c.notes;
  }
  // Singular non-normal Z: ran Z^* is not inside ran Z, so |Z^*| <= rho |Z| fails.
  expect_error(ErrorKind::HypothesisViolated, [] {
    (void)check_spectral_radius_corollary(PosMap::identity(2), CMat{{0.0, 1.0}, {0.0, 0.0}});
  });
  expect_error(ErrorKind::HypothesisViolated,
               [] { (void)check_spectral_radius_corollary(PosMap::identity(2), CMat(2, 2)); });
}

TEST(Corollaries, SemiHyponormalForm) {
  Rng rng(18);
  for (int rep = 0; rep < 20; ++rep) {
    const CMat z = random_semi_hyponormal(3, rng);
    EXPECT_TRUE(check_semi_hyponormal_corollary(random_map("kraus_sum", 3, 3, rng), z).pass);
  }
  expect_error(ErrorKind::HypothesisViolated,
               [] { (void)check_semi_hyponormal_corollary(PosMap::identity(2), kZ); });
}

TEST(TwoPositive, NormalIdentityGivesZeroSlack) {
  Rng rng(19);
  const CMat n = random_normal_matrix(3, rng);
  const Certificate c = check_two_positive_split(PosMap::identity(3), n, 0.0);
  EXPECT_TRUE(c.pass);
  EXPECT_NEAR(c.slack, 0.0, 1e-9);
}

TEST(TwoPositive, RefusesPositiveMaps) {
  expect_error(ErrorKind::ClassViolation, [] { (void)check_two_positive_split(PosMap::transpose(2), kZ, 0.0); });
  expect_error(ErrorKind::ClassViolation, [] { (void)check_two_positive_split(transpose_sum(2), kZ, 0.0); });
}

TEST(TwoPositive, CompletelyPositiveMapsPassForAllExponents) {
  Rng rng(20);
  for (double p : {-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, -2.0}) {
    for (int rep = 0; rep < 20; ++rep) {
      const PosMap phi = random_map("kraus_sum", 3, 3, rng);
      const CMat z = rep % 4 == 0 ? random_rank_deficient(3, 2, rng) : ginibre(3, 3, rng);
      const Certificate c = check_two_positive_split(phi, z, p, Tolerance{1e-8, 1e-8, 1e-12});
      EXPECT_TRUE(c.pass) << "p=" << p << " slack " << c.slack;
    }
  }
}

TEST(TwoPositive, DeclaredTwoPositiveIsAccepted) {
  Rng rng(21);
  const PosMap phi = random_map("kraus_sum", 2, 2, rng).with_declared_class(PositivityClass::TwoPositive);
  EXPECT_TRUE(check_two_positive_split(phi, kZ, 0.5).pass);
}

TEST(LogMajorization, Examples) {
  Rng rng(22);
  const CMat n = random_normal_matrix(4, rng);
  const MajorizationReport r = check_log_majorization(PosMap::identity(4), n, modulus(n), FunPair::power(0));
  EXPECT_TRUE(r.pass);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(r.k_products_lhs[k], r.k_products_rhs[k], 1e-9 * (1 + r.k_products_rhs[k]));
  EXPECT_TRUE(check_log_majorization(transpose_sum(2), kZ, kato_supremum(kZ), FunPair::power(0)).pass);
}

TEST(Gaps, IdentityContraction) {
  Rng rng(23);
  const HermMat s = wishart_psd(5, 5, rng);
  const GapReport r = check_schur_gaps(s, CMat::identity(5));
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.min_slack, -1e-12);
  EXPECT_EQ(r.entries.size(), 15u);
}

TEST(Gaps, ThirdEigenvalueBoundOnRandomSchur) {
  Rng rng(24);
  for (int rep = 0; rep < 100; ++rep) {
    const HermMat s = wishart_psd(5, 1 + rng.index(5), rng);
    const CMat a = random_contraction(5, rng);
    const GapReport r = check_schur_gaps(s, a);
    EXPECT_TRUE(r.pass);
    // Independent oracle for the j = k = 1 entry.
    Eigen::JacobiSVD<EMat> svd(to_eigen(schur_product(s.mat(), a)));
    std::vector<double> d;
    for (std::size_t i = 0; i < 5; ++i) d.push_back(s(i));
    std::sort(d.begin(), d.end(), std::greater<>());
    EXPECT_LE(svd.singularValues()(2), d[1] + 1e-10);
  }
}

TEST(Gaps, SchurRemarkBothCases) {
  Rng rng(25);
  for (int rep = 0; rep < 50; ++rep) {
    const HermMat p = wishart_psd(4, 4, rng);
    const HermMat contractive = p * (1.0 / lambda_max(p));
    EXPECT_TRUE(check_schur_remark(contractive).pass);
    const HermMat expansive = p + HermMat::identity(4);
    EXPECT_TRUE(check_schur_remark(expansive).pass);
  }
  expect_error(ErrorKind::HypothesisViolated, [] { (void)check_schur_remark(diag({0.5, 2.0})); });
}

TEST(Gaps, GridCoversAllPairs) {
  Rng rng(26);
  const CMat z = ginibre(3, 3, rng);
  const GapReport r = check_eigenvalue_gaps(random_map("kraus_sum", 3, 4, rng), z, kato_supremum(z), FunPair::power(0));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.entries.size(), 10u);  // j + k + 1 <= 4
}

TEST(ReverseProduct, Examples) {
  Rng rng(27);
  const HermMat p = wishart_psd(4, 4, rng);
  EXPECT_TRUE(check_reverse_product(PosMap::identity(4), p.mat(), p, FunPair::power(0)).pass);
  // Scalar J: both sides are partial products of one constant.
  const HermMat c = HermMat::identity(4) * 3.0;
  const ReverseProductReport r = check_reverse_product(PosMap::identity(4), c.mat(), c, FunPair::power(0));
  EXPECT_TRUE(r.pass);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(r.lhs[k] / r.rhs[k], 1.0, 1e-12);
}

TEST(ReverseProduct, FullProductIsDeterminantSquared) {
  Rng rng(28);
  const CMat z = ginibre(3, 3, rng);
  const PosMap phi = random_map("kraus_sum", 3, 3, rng);
  const HermMat j = kato_supremum(z);
  const ReverseProductReport r = check_reverse_product(phi, z, j, FunPair::power(0));
  EXPECT_TRUE(r.pass);
  const double dz = std::abs(to_eigen(phi.apply(z)).determinant());
  const double dj = std::abs(to_eigen(phi.apply(j.mat())).determinant());
  EXPECT_NEAR(r.lhs.back() / (dz * dz), 1.0, 1e-8);
  EXPECT_NEAR(r.rhs.back() / (dj * dj), 1.0, 1e-8);
}

TEST(Cartesian, HermitianInput) {
  Rng rng(29);
  const HermMat h = random_hermitian(3, rng);
  EXPECT_LE(max_diff(cartesian_modulus_sum(h.mat()).mat(), modulus(h.mat()).mat()), 1e-12);
  const CartesianReport r = check_cartesian_suite(PosMap::identity(3), h.mat());
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.congruence_norm, 1.0, 1e-9);
}

TEST(Cartesian, CommutingParts) {
  Rng rng(30);
  const CMat u = haar_unitary(3, rng);
  const HermMat x = reconstruct(u, std::vector<double>{1.0, -2.0, 0.5});
  const HermMat y = reconstruct(u, std::vector<double>{-0.3, 1.0, 2.0});
  const CMat z = x.mat() + y.mat() * cplx(0, 1);
  EXPECT_TRUE(loewner_leq(modulus(z), cartesian_modulus_sum(z)).pass);
  const CartesianReport r = check_cartesian_suite(random_map("kraus_sum", 3, 3, rng), z);
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.mean_bound.slack, -1e-9);
}

TEST(Cartesian, RandomSuite) {
  Rng rng(31);
  for (const auto& fam : known_map_families()) {
    for (int rep = 0; rep < 10; ++rep) {
      const PosMap phi = random_map(fam, 2 + rng.index(3), 2 + rng.index(3), rng);
      const std::size_t n = phi.in_dim();
      const CartesianReport r = check_cartesian_suite(phi, ginibre(n, n, rng), Tolerance{1e-8, 1e-8, 1e-12});
      EXPECT_TRUE(r.pass) << fam;
      EXPECT_LE(r.embedding_residual, 1e-10 * (1 + operator_norm(phi.apply(CMat::identity(n)))));
    }
  }
}

TEST(Digest, StableAndSensitive) {
  const CMat a = CMat::identity(2);
  const std::string d1 = digest_inputs({&a, &kZ}, {1.0});
  EXPECT_EQ(d1, digest_inputs({&a, &kZ}, {1.0}));
  EXPECT_NE(d1, digest_inputs({&a, &kZ}, {2.0}));
  EXPECT_NE(d1, digest_inputs({&kZ, &a}, {1.0}));
  EXPECT_EQ(d1.size(), 16u);
}
