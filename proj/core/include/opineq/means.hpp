#pragma once

#include <optional>
#include <vector>

#include "opineq/linalg.hpp"

namespace opineq {

struct MeanResult {
  HermMat value;
  /// True when at least one input was singular at the rank cutoff and the
  /// singular-input extension was used.
  bool singular_input = false;
};

/// A # B for PSD A, B.
///
/// If one argument is positive definite it is used as the base of
/// A^{1/2}(A^{-1/2} B A^{-1/2})^{1/2} A^{1/2} (symmetry of #). If both are
/// singular the mean is computed exactly on ran(A): B is first shorted to
/// ran(A) (B11 - B12 B22^+ B21 in the splitting ran(A) + ker(A)), and the
/// mean of A|ran(A) with the shorted operator is embedded back. This is the
/// limit of (A + eI) # (B + eI) as e -> 0.
MeanResult geometric_mean_detailed(const HermMat& a, const HermMat& b, const Tolerance& tol = {});
HermMat geometric_mean(const HermMat& a, const HermMat& b, const Tolerance& tol = {});

/// (A + e s I) # (B + e s I), s = max(|A|, |B|).
HermMat geometric_mean_regularized(const HermMat& a, const HermMat& b, double eps);

/// Regularized route: e in {1e-4, 1e-6, 1e-8}, accepted when the tail
/// estimate d * 1e-8 / (1e-6 - 1e-8) of the last step d is within
/// 1e-6 (1 + s) in operator norm, NoConvergence otherwise. Converges only when the defect vanishes linearly in e, which
/// is not the case for ranges in general position.
HermMat geometric_mean_limit(const HermMat& a, const HermMat& b, const Tolerance& tol = {});

/// A # B <= (A + B) / 2.
LoewnerResult agm_check(const HermMat& a, const HermMat& b, const Tolerance& tol = {});

/// Supremum of two PSD matrices in the spectral order: the spectral
/// projection of the result for (-inf, t] is the intersection of those of
/// A and B. Kato's theorem identifies it with lim ((A^p + B^p)/2)^{1/p}.
HermMat spectral_supremum(const HermMat& a, const HermMat& b, const Tolerance& tol = {});

/// |Z| v |Z^*|.
HermMat kato_supremum(const CMat& z, const Tolerance& tol = {});

/// ((|Z|^p + |Z^*|^p) / 2)^{1/p}, evaluated with the spectrum rescaled to
/// [0, 1] so large p does not overflow.
HermMat kato_power_mean(const CMat& z, double p, const Tolerance& tol = {});

/// (|Z|^q + |Z^*|^q)^{1/q}, q >= 1 (no 1/2 factor).
HermMat q_mean(const CMat& z, double q, const Tolerance& tol = {});

struct MajorizationReport {
  std::vector<double> k_products_lhs;
  std::vector<double> k_products_rhs;
  bool pass = false;
  /// max_k lhs_k / rhs_k, with 0/0 read as 1.
  double worst_ratio = 0.0;
  /// 1-based k of the first failing prefix, if any.
  std::optional<std::size_t> first_failure;
};

/// Eigenvalues sorted descending, dust below the rank cutoff set to 0.
std::vector<double> clamped_spectrum(const HermMat& h, const Tolerance& tol = {});

/// A weakly log-majorized by B: prod_{j<=k} l_j(A) <= prod_{j<=k} l_j(B) (1 + rel).
MajorizationReport weak_log_majorizes(const HermMat& a, const HermMat& b, const Tolerance& tol = {});

/// S^* A S for S with orthonormal columns (NotIsometry otherwise).
HermMat compress(const HermMat& a, const CMat& s, const Tolerance& tol = {});

/// (A # B)_S <= A_S # B_S.
LoewnerResult ando_compression_check(const HermMat& a, const HermMat& b, const CMat& s,
                                     const Tolerance& tol = {});

}  // namespace opineq
