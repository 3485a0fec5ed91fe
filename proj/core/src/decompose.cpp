#include "opineq/decompose.hpp"

#include <algorithm>
#include <cmath>

namespace opineq {

namespace {

// Singular values as column norms of Z Q, which keeps tiny ones at rounding size.
std::vector<double> column_norms(const CMat& zq) {
  std::vector<double> out(zq.cols(), 0.0);
  for (std::size_t k = 0; k < zq.cols(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < zq.rows(); ++i) s += std::norm(zq(i, k));
    out[k] = std::sqrt(s);
  }
  return out;
}

}  // namespace

HermMat modulus(const CMat& z, const Tolerance& tol) {
  require_square(z, "modulus");
  (void)tol;
  const EigenSystem es = eigh(HermMat::symmetrize(z.adjoint() * z));
  return reconstruct(es.vectors, column_norms(z * es.vectors));
}

HermMat comodulus(const CMat& z, const Tolerance& tol) { return modulus(z.adjoint(), tol); }

PolarParts polar(const CMat& z, const Tolerance& tol) {
  require_square(z, "polar");
  const std::size_t n = z.rows();
  const EigenSystem right = eigh(HermMat::symmetrize(z.adjoint() * z));
  const double lmax = std::max(right.values.empty() ? 0.0 : right.values.front(), 0.0);
  const double floor = tol.cutoff(n) * lmax;

  const CMat zq = z * right.vectors;
  const std::vector<double> sigma = column_norms(zq);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (lmax > 0.0 && std::max(right.values[k], 0.0) > floor) ++rank;
  }

  CMat p(n, n);
  for (std::size_t k = 0; k < rank; ++k) {
    for (std::size_t i = 0; i < n; ++i) p(i, k) = zq(i, k) / sigma[k];
  }
  if (rank < n) {
    const EigenSystem left = eigh(HermMat::symmetrize(z * z.adjoint()));
    for (std::size_t k = rank; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) p(i, k) = left.vectors(i, k);
  }
  p = orthonormalize_columns(p);

  PolarParts parts;
  parts.unitary = p * right.vectors.adjoint();
  parts.modulus = reconstruct(right.vectors, sigma);
  return parts;
}

UnitaryMean unitary_mean_decomposition(const CMat& a, const Tolerance& tol) {
  require_square(a, "unitary_mean_decomposition");
  const double nrm = operator_norm(a);
  if (nrm > 1.0 + tol.abs) {
    throw Error(ErrorKind::NotContraction, "operator norm " + std::to_string(nrm) + " > 1");
  }
  const CMat scaled = nrm > 1.0 ? a * (1.0 / nrm) : a;
  const PolarParts pp = polar(scaled, tol);
  const std::size_t n = a.rows();

  const HermMat defect = HermMat::identity(n) - HermMat::symmetrize(pp.modulus.mat() * pp.modulus.mat());
  // Rounding can push eigenvalues of I - |A|^2 slightly below zero.
  const HermMat root = matrix_function(defect, {[](double t) { return std::sqrt(std::max(t, 0.0)); }}, tol);

  const CMat w = pp.modulus.mat() + cplx(0.0, 1.0) * root.mat();
  return {pp.unitary * w, pp.unitary * w.adjoint()};
}

CartesianParts cartesian(const CMat& z) {
  require_square(z, "cartesian");
  const CMat zs = z.adjoint();
  CartesianParts parts;
  parts.re_part = HermMat::symmetrize((z + zs) * 0.5);
  parts.im_part = HermMat::symmetrize((z - zs) * cplx(0.0, -0.5));
  return parts;
}

HermMat range_projection(const CMat& z, const Tolerance& tol) {
  require_square(z, "range_projection");
  return generalized_power(HermMat::symmetrize(z * z.adjoint()), 0.0, tol);
}

HermMat support_projection(const CMat& z, const Tolerance& tol) {
  require_square(z, "support_projection");
  return generalized_power(HermMat::symmetrize(z.adjoint() * z), 0.0, tol);
}

}  // namespace opineq
