#pragma once

#include <utility>

#include "opineq/linalg.hpp"

namespace opineq {

/// Z = unitary * modulus.
struct PolarParts {
  CMat unitary;
  HermMat modulus;
};

/// Z = re_part + i * im_part.
struct CartesianParts {
  HermMat re_part;
  HermMat im_part;
};

struct UnitaryMean {
  CMat u0;
  CMat u1;
};

/// |Z| = (Z^* Z)^{1/2}.
HermMat modulus(const CMat& z, const Tolerance& tol = {});
/// |Z^*| = (Z Z^*)^{1/2}.
HermMat comodulus(const CMat& z, const Tolerance& tol = {});

/// Polar decomposition from the SVD Z = P S Q^*. The unitary factor is P Q^*;
/// for singular Z the missing left singular vectors are taken from the
/// Jacobi eigenbasis of Z Z^* (kernel directions) and re-orthonormalized, so
/// the completion is deterministic. Z = 0 gives the identity.
PolarParts polar(const CMat& z, const Tolerance& tol = {});

/// A contraction written as the mean of two unitaries, A = (U0 + U1) / 2,
/// with W = |A| + i (I - |A|^2)^{1/2}, U0 = U W, U1 = U W^*.
/// Norms in (1, 1 + tol.abs] are renormalized first.
UnitaryMean unitary_mean_decomposition(const CMat& a, const Tolerance& tol = {});

CartesianParts cartesian(const CMat& z);

/// Orthogonal projection onto the column space of Z.
HermMat range_projection(const CMat& z, const Tolerance& tol = {});
/// Orthogonal projection onto the orthogonal complement of ker Z.
HermMat support_projection(const CMat& z, const Tolerance& tol = {});

}  // namespace opineq
