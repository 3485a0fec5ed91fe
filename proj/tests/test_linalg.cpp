#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "opineq/generators.hpp"
#include "opineq/linalg.hpp"
#include "test_util.hpp"

using namespace opineq;
using namespace opineq::testing;

TEST(CMat, ProductAndAdjoint) {
  const CMat a{{1.0, cplx(0, 1)}, {2.0, 3.0}};
  const CMat b{{0.0, 1.0}, {1.0, 0.0}};
  const CMat ab = a * b;
  EXPECT_EQ(ab(0, 0), cplx(0, 1));
  EXPECT_EQ(ab(0, 1), cplx(1, 0));
  EXPECT_EQ(ab(1, 0), cplx(3, 0));
  EXPECT_EQ(a.adjoint()(1, 0), cplx(0, -1));
  EXPECT_EQ(a.transpose()(1, 0), cplx(0, 1));
  EXPECT_EQ(a.trace(), cplx(4, 0));
}

TEST(CMat, BlocksAndDirectSum) {
  const CMat d = direct_sum(CMat::identity(2), diag2(3, 4));
  EXPECT_EQ(d.rows(), 4u);
  EXPECT_EQ(d(3, 3), cplx(4, 0));
  EXPECT_EQ(max_diff(d.block(2, 2, 2, 2), diag2(3, 4)), 0.0);
  CMat e(3, 3);
  e.set_block(1, 1, diag2(5, 6));
  EXPECT_EQ(e(2, 2), cplx(6, 0));
}

TEST(CMat, MultiplyShapeMismatchThrows) {
  try {
    (void)(CMat(2, 3) * CMat(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(HermMat, RejectsNonHermitian) {
  try {
    HermMat h(CMat{{1.0, 2.0}, {0.0, 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonHermitian);
  }
}

TEST(HermMat, StoresExactlyHermitian) {
  const HermMat h(CMat{{1.0, cplx(2.0, 1e-12)}, {cplx(2.0, 0.0), 1.0}});
  EXPECT_EQ(hermitian_defect(h.mat()), 0.0);
}

TEST(Eigh, DiagonalInput) {
  const auto es = eigh(HermMat::diagonal(std::vector<double>{1.0, 16.0}));
  EXPECT_DOUBLE_EQ(es.values[0], 16.0);
  EXPECT_DOUBLE_EQ(es.values[1], 1.0);
  EXPECT_NEAR(std::abs(es.vectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(es.vectors(0, 1)), 1.0, 1e-15);
}

TEST(Eigh, OffDiagonalTwoByTwo) {
  const auto es = eigh(HermMat(CMat{{0.0, 5.0}, {5.0, 0.0}}));
  EXPECT_NEAR(es.values[0], 5.0, 1e-14);
  EXPECT_NEAR(es.values[1], -5.0, 1e-14);
}

TEST(Eigh, Identity) {
  const auto es = eigh(HermMat::identity(5));
  for (double v : es.values) EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_LE(unitarity_defect(es.vectors), 1e-15);
}

TEST(Eigh, MatchesEigenOnRandomHermitian) {
  Rng rng(101);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const HermMat h = random_hermitian(n, rng) * std::pow(10.0, rng.uniform(-3, 3));
      const auto es = eigh(h);
      Eigen::SelfAdjointEigenSolver<EMat> oracle(to_eigen(h.mat()));
      const double scale = 1.0 + h.mat().max_abs();
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(es.values[i], oracle.eigenvalues()(Eigen::Index(n - 1 - i)), 1e-12 * scale);
      }
      EXPECT_LE(max_diff(reconstruct(es.vectors, es.values).mat(), h.mat()), 1e-10 * scale);
      EXPECT_LE(unitarity_defect(es.vectors), 1e-12);
    }
  }
}

TEST(Eigh, RepeatedEigenvalues) {
  Rng rng(7);
  const CMat u = haar_unitary(6, rng);
  const std::vector<double> d = {3, 3, 3, -1, -1, 0};
  const HermMat h = reconstruct(u, d);
  const auto es = eigh(h);
  std::vector<double> sorted = d;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(es.values[i], sorted[i], 1e-13);
  EXPECT_LE(max_diff(reconstruct(es.vectors, es.values).mat(), h.mat()), 1e-12);
}

TEST(MatrixFunction, SqrtOfDiagonal) {
  const HermMat r = sqrt_psd(HermMat::diagonal(std::vector<double>{1.0, 16.0}));
  EXPECT_LE(max_diff(r.mat(), diag2(1, 2 * 2)), 1e-14);
}

TEST(MatrixFunction, SquareIsProduct) {
  Rng rng(9);
  const HermMat h = random_hermitian(5, rng);
  const HermMat sq = matrix_function(h, {[](double t) { return t * t; }});
  EXPECT_LE(max_diff(sq.mat(), h.mat() * h.mat()), 1e-12);
}

TEST(MatrixFunction, SqrtRoundTrip) {
  Rng rng(10);
  for (int rep = 0; rep < 20; ++rep) {
    const HermMat p = wishart_psd(4, 4, rng);
    const HermMat r = sqrt_psd(p);
    EXPECT_LE(max_diff(r.mat() * r.mat(), p.mat()), 1e-10);
    EXPECT_LE(max_diff(r.mat(), eigen_sqrt_psd(p.mat())), 1e-10);
  }
}

TEST(MatrixFunction, HomomorphismOnProducts) {
  Rng rng(12);
  const HermMat p = wishart_psd(5, 5, rng);
  const auto f = ScalarFunction{[](double t) { return std::sqrt(t); }, FunctionDomain::NonNegative};
  const auto g = ScalarFunction{[](double t) { return t + 1.0; }, FunctionDomain::NonNegative};
  const auto fg = ScalarFunction{[](double t) { return std::sqrt(t) * (t + 1.0); }, FunctionDomain::NonNegative};
  const CMat prod = matrix_function(p, f).mat() * matrix_function(p, g).mat();
  EXPECT_LE(max_diff(matrix_function(p, fg).mat(), prod), 1e-11);
}

TEST(MatrixFunction, NegativeInputOnNonNegativeDomainThrows) {
  try {
    (void)sqrt_psd(HermMat::diagonal(std::vector<double>{1.0, -0.5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
  }
}

TEST(GeneralizedPower, KernelMapsToZero) {
  const HermMat d = HermMat::diagonal(std::vector<double>{4.0, 0.0});
  EXPECT_LE(max_diff(generalized_power(d, -1.0).mat(), diag2(0.25, 0)), 1e-15);
  EXPECT_LE(max_diff(generalized_power(d, 0.0).mat(), diag2(1, 0)), 1e-15);
}

TEST(GeneralizedPower, InverseResidual) {
  Rng rng(13);
  const HermMat p = wishart_psd(5, 5, rng);
  EXPECT_LE(max_diff(p.mat() * generalized_power(p, -1.0).mat(), CMat::identity(5)), 1e-9);
}

TEST(GeneralizedPower, PseudoInverseMatchesEigen) {
  Rng rng(14);
  const HermMat p = wishart_psd(5, 2, rng);
  const EMat pinv = to_eigen(p.mat()).completeOrthogonalDecomposition().pseudoInverse();
  EXPECT_LE(max_diff(generalized_power(p, -1.0).mat(), from_eigen(pinv)), 1e-8);
}

TEST(Loewner, Examples) {
  const auto r1 = loewner_leq(HermMat::identity(2), HermMat::identity(2) * 2.0);
  EXPECT_TRUE(r1.pass);
  EXPECT_NEAR(r1.slack, 1.0, 1e-15);
  const auto r2 = loewner_leq(HermMat::diagonal(std::vector<double>{2, 0}), HermMat::identity(2));
  EXPECT_FALSE(r2.pass);
  EXPECT_NEAR(r2.slack, -1.0, 1e-15);
  Rng rng(3);
  const HermMat h = random_hermitian(4, rng);
  const auto r3 = loewner_leq(h, h);
  EXPECT_TRUE(r3.pass);
  EXPECT_NEAR(r3.slack, 0.0, 1e-14);
}

TEST(Loewner, PartialOrderOnChains) {
  Rng rng(4);
  for (int rep = 0; rep < 50; ++rep) {
    const HermMat a = random_hermitian(4, rng);
    const HermMat b = a + wishart_psd(4, 2, rng);
    const HermMat c = b + wishart_psd(4, 1, rng);
    EXPECT_TRUE(loewner_leq(a, b).pass);
    EXPECT_TRUE(loewner_leq(b, c).pass);
    EXPECT_TRUE(loewner_leq(a, c).pass);
    if (loewner_leq(b, a).pass) EXPECT_LE(max_diff(a.mat(), b.mat()), 1e-8);
  }
}

TEST(OperatorNorm, Examples) {
  Rng rng(5);
  EXPECT_NEAR(operator_norm(haar_unitary(4, rng)), 1.0, 1e-13);
  EXPECT_NEAR(operator_norm(diag2(1, 4)), 4.0, 1e-14);
  EXPECT_NEAR(operator_norm(CMat{{0.0, 4.0}, {1.0, 0.0}}), 4.0, 1e-14);
}

TEST(OperatorNorm, MatchesSvdAndIsSubmultiplicative) {
  Rng rng(6);
  for (int rep = 0; rep < 30; ++rep) {
    const CMat a = ginibre(5, 5, rng);
    const CMat b = ginibre(5, 5, rng);
    const CMat u = haar_unitary(5, rng);
    EXPECT_NEAR(operator_norm(a), eigen_operator_norm(a), 1e-11);
    EXPECT_LE(operator_norm(a * b), operator_norm(a) * operator_norm(b) * (1 + 1e-12));
    EXPECT_NEAR(operator_norm(u * a * u.adjoint()), operator_norm(a), 1e-11);
  }
  EXPECT_NEAR(operator_norm(ginibre(3, 5, rng) * 0.0), 0.0, 0.0);
}

TEST(SpectralRadiusPsdProduct, Examples) {
  const double k = 4.0;
  // The product diag(1, k) diag(1, 1/k) is the identity.
  EXPECT_NEAR(spectral_radius_psd_product(HermMat::diagonal(std::vector<double>{1, k}),
                                          HermMat::diagonal(std::vector<double>{1, 1 / k})),
              1.0, 1e-14);
  // |Z^*| and |Z|^{-1} for Z = [[0, 1], [k, 0]].
  EXPECT_NEAR(spectral_radius_psd_product(HermMat::diagonal(std::vector<double>{1, k}),
                                          HermMat::diagonal(std::vector<double>{1 / k, 1})),
              k, 1e-14);
  EXPECT_NEAR(spectral_radius_psd_product(HermMat::identity(3), HermMat::identity(3)), 1.0, 1e-14);
  EXPECT_NEAR(spectral_radius_psd_product(HermMat::diagonal(std::vector<double>{2, 3, 0.5}),
                                          HermMat::diagonal(std::vector<double>{1, 0.5, 8})),
              4.0, 1e-14);
}

TEST(SpectralRadiusPsdProduct, MatchesGeneralEigenvalues) {
  Rng rng(15);
  for (int rep = 0; rep < 20; ++rep) {
    const HermMat a = wishart_psd(4, 4, rng);
    const HermMat b = wishart_psd(4, 3, rng);
    Eigen::ComplexEigenSolver<EMat> ces(to_eigen(a.mat() * b.mat()));
    const double oracle = ces.eigenvalues().cwiseAbs().maxCoeff();
    EXPECT_NEAR(spectral_radius_psd_product(a, b), oracle, 1e-10 * (1 + oracle));
  }
}

TEST(GeneralEigenvalues, MatchesEigen) {
  Rng rng(16);
  for (std::size_t n = 1; n <= 10; ++n) {
    const CMat m = ginibre(n, n, rng);
    auto ours = eigenvalues_general(m);
    Eigen::ComplexEigenSolver<EMat> ces(to_eigen(m));
    std::vector<cplx> ref(ces.eigenvalues().data(), ces.eigenvalues().data() + n);
    // Greedy matching.
    for (const cplx& r : ref) {
      auto it = std::min_element(ours.begin(), ours.end(),
                                 [&](const cplx& a, const cplx& b) { return std::abs(a - r) < std::abs(b - r); });
      ASSERT_NE(it, ours.end());
      EXPECT_LE(std::abs(*it - r), 1e-10 * (1 + std::abs(r)));
      ours.erase(it);
    }
  }
}

TEST(GeneralEigenvalues, SpectralRadiusExamples) {
  EXPECT_NEAR(spectral_radius(CMat{{0.0, 1.0}, {0.0, 0.0}}), 0.0, 1e-12);
  EXPECT_NEAR(spectral_radius(diag2(-3, 2)), 3.0, 1e-14);
  EXPECT_NEAR(spectral_radius(CMat{{0.0, 4.0}, {1.0, 0.0}}), 2.0, 1e-13);
}

TEST(Orthonormalize, ProducesUnitary) {
  Rng rng(17);
  EXPECT_LE(unitarity_defect(orthonormalize_columns(ginibre(6, 6, rng))), 1e-14);
  // Dependent columns are replaced, the result is still unitary.
  CMat m(3, 3);
  m(0, 0) = 1.0;
  m(0, 1) = 2.0;
  EXPECT_LE(unitarity_defect(orthonormalize_columns(m)), 1e-14);
}
