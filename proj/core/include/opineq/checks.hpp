#pragma once

// Executable forms of the Russo-Dye type inequalities. Every geometric check
// builds the witness unitary V from the polar decomposition of Phi(Z) and
// measures the Loewner slack lambda_min(rhs - lhs).

#include <optional>
#include <string>
#include <vector>

#include "opineq/linalg.hpp"
#include "opineq/means.hpp"
#include "opineq/posmap.hpp"

namespace opineq {

enum class FunPairKind { Power, Range, Scaled };

std::string_view to_string(FunPairKind k);
FunPairKind funpair_kind_from_string(std::string_view s);

/// A pair (f, g) with f(t) g(t) = t^2:
///   Power(p):  f = t^{1+p},      g = t^{1-p}
///   Range:     f = t^2,          g = 1_{t > 0}
///   Scaled(r): f = sqrt(r) t,    g = t / sqrt(r)
/// Nonpositive powers act as generalized inverses (0 maps to 0).
struct FunPair {
  FunPairKind kind = FunPairKind::Power;
  double param = 0.0;  ///< p for Power, rho for Scaled

  static FunPair power(double p) { return {FunPairKind::Power, p}; }
  static FunPair range() { return {FunPairKind::Range, 0.0}; }
  static FunPair scaled(double rho);

  double f(double t) const;
  double g(double t) const;
  HermMat apply_f(const HermMat& modulus, const Tolerance& tol = {}) const;
  HermMat apply_g(const HermMat& comodulus, const Tolerance& tol = {}) const;
  std::string describe() const;
};

/// Named side condition recorded on a certificate.
struct AuxCheck {
  std::string name;
  double slack = 0.0;
  bool pass = true;
};

struct Certificate {
  std::string check_id;
  std::string inputs_digest;
  HermMat lhs;
  HermMat rhs;
  std::optional<CMat> witness_v;
  double slack = 0.0;  ///< lambda_min(rhs - lhs)
  bool pass = false;   ///< slack >= -tol.abs (1 + |rhs|)
  bool used_singular_mean_limit = false;
  Tolerance tolerances;
  std::string notes;
  std::vector<AuxCheck> aux;

  /// Main inequality and every side condition.
  bool all_pass() const;
};

/// Fills slack and pass from lhs / rhs.
void settle(Certificate& cert);

/// FNV-1a over the raw entries and parameters, hex encoded.
std::string digest_inputs(std::initializer_list<const CMat*> mats, std::initializer_list<double> params = {});

struct DominationResult {
  bool holds = false;
  double f_slack = 0.0;  ///< lambda_min(J - f(|Z|))
  double g_slack = 0.0;  ///< lambda_min(J - g(|Z^*|))
};

DominationResult domination(const CMat& z, const HermMat& j, const FunPair& fp, const Tolerance& tol = {});
/// f(|Z|) <= J and g(|Z^*|) <= J.
bool domination_holds(const CMat& z, const HermMat& j, const FunPair& fp, const Tolerance& tol = {});

/// V = (polar unitary of Phi(Z))^*, so V Phi(Z) = |Phi(Z)|.
CMat witness_unitary(const PosMap& phi, const CMat& z, const Tolerance& tol = {});

/// |Phi(A)| <= |Phi(I)| for a contraction A (scalar certificate).
Certificate check_russo_dye(const PosMap& phi, const CMat& a, const Tolerance& tol = {});

/// |Phi(Z)| <= (Phi(J) + V Phi(J) V^*) / 2.
Certificate check_arithmetic_domination(const PosMap& phi, const CMat& z, const HermMat& j, const FunPair& fp,
                                        const Tolerance& tol = {});

/// |Phi(Z)| <= Phi(J) # V Phi(J) V^*, with side conditions recording the
/// steps of the argument: positivity of [[Phi(J), Phi(Z)^*], [Phi(Z), Phi(J)]],
/// the compressed contraction Y = J^{-1/2} Z J^{-1/2}, Psi(Y) = Phi(Z) for
/// Psi = Phi(J^{1/2} . J^{1/2}), Y as a mean of two unitaries, and the
/// arithmetic-geometric sharpening.
Certificate check_geometric_domination(const PosMap& phi, const CMat& z, const HermMat& j, const FunPair& fp,
                                       const Tolerance& tol = {});

/// Same inequality with a caller-supplied V and no side conditions.
Certificate geometric_domination_for(const PosMap& phi, const CMat& z, const HermMat& j, const CMat& v,
                                     const Tolerance& tol = {});

/// |Phi(Z)| <= Phi(|Z|^{1+p}) # V Phi(|Z^*|^{1-p}) V^* for maps declared at
/// least two-positive (ClassViolation otherwise).
Certificate check_two_positive_split(const PosMap& phi, const CMat& z, double p, const Tolerance& tol = {});

// Corollary forms; each is check_geometric_domination with fixed (J, f, g).

/// Normal N, J = |N|, f = g = t.
Certificate check_normal_corollary(const PosMap& phi, const CMat& n, const Tolerance& tol = {});
/// Contraction A, J = I, f = g = t.
Certificate check_contraction_corollary(const PosMap& phi, const CMat& a, const Tolerance& tol = {});
/// J >= range projection of Z and J >= Z^*Z.
Certificate check_range_corollary(const PosMap& phi, const CMat& z, const HermMat& j, const Tolerance& tol = {});
/// rho(|Z^*| |Z|^{-1}), generalized inverse on the support of Z.
double modulus_ratio_radius(const CMat& z, const Tolerance& tol = {});
/// |Phi(Z)| <= sqrt(rho) Phi(|Z|) # V Phi(|Z|) V^*; Z may be singular as
/// long as |Z^*| <= rho |Z|. rho <= 0 means "compute it".
Certificate check_spectral_radius_corollary(const PosMap& phi, const CMat& z, double rho = 0.0,
                                            const Tolerance& tol = {});
/// |Z^*| <= |Z| (rho = 1).
Certificate check_semi_hyponormal_corollary(const PosMap& phi, const CMat& z, const Tolerance& tol = {});

/// |Phi(Z)| weakly log-majorized by Phi(J).
MajorizationReport check_log_majorization(const PosMap& phi, const CMat& z, const HermMat& j, const FunPair& fp,
                                          const Tolerance& tol = {});

struct GapEntry {
  std::size_t j = 0;  ///< 0-based as in the statement
  std::size_t k = 0;
  double lhs = 0.0;   ///< lambda_{j+k+1}
  double rhs = 0.0;   ///< sqrt(lambda_{j+1} lambda_{k+1})
  bool pass = true;
};

struct GapReport {
  std::vector<GapEntry> entries;
  bool pass = true;
  double min_slack = 0.0;
};

/// lambda_{j+k+1}(|Phi(Z)|) <= sqrt(lambda_{j+1}(Phi(J)) lambda_{k+1}(Phi(J)))
/// for every j + k + 1 <= out_dim (1-based eigenvalue indices, descending).
GapReport check_eigenvalue_gaps(const PosMap& phi, const CMat& z, const HermMat& j, const FunPair& fp,
                                const Tolerance& tol = {});

/// lambda_{j+k+1}(|S o A|) <= sqrt(s_{j+1} s_{k+1}), s = diagonal of S sorted
/// descending, A a contraction.
GapReport check_schur_gaps(const HermMat& s, const CMat& a, const Tolerance& tol = {});

/// lambda_{2j+1}(S o S^{-1}) <= s_{j+1} for expansive S (S >= I), and
/// lambda_{2j+1}(S o S) <= s_{j+1} for contractive S. HypothesisViolated if
/// S is neither.
GapReport check_schur_remark(const HermMat& s, const Tolerance& tol = {});

struct ReverseProductReport {
  std::vector<double> lhs;  ///< (prod_{j<=k} lambda_j^up(|Phi(Z)|))^2
  std::vector<double> rhs;  ///< prod_{j<=k} lambda_j^up(Phi(J)) lambda_j^down(Phi(J))
  bool pass = true;
  double worst_ratio = 0.0;
};

ReverseProductReport check_reverse_product(const PosMap& phi, const CMat& z, const HermMat& j, const FunPair& fp,
                                           const Tolerance& tol = {});

struct CartesianReport {
  /// |Phi(Z)| <= Phi(K) # V Phi(K) V^*, K = |X| + |Y|.
  Certificate mean_bound;
  /// |Phi(Z)| weakly log-majorized by Phi(K).
  MajorizationReport majorization;
  /// |K^{-1/2} Z K^{-1/2}| and rho(Z K^{-1}) (generalized inverses).
  double congruence_norm = 0.0;
  bool congruence_pass = false;
  double radius = 0.0;
  bool radius_pass = false;
  /// |Psi(N) - Phi(Z)| + |Psi(|N|) - Phi(K)| for N = diag(X, iY) and
  /// Psi = Phi o partial trace.
  double embedding_residual = 0.0;
  bool singular_sum = false;
  bool pass = false;
};

CartesianReport check_cartesian_suite(const PosMap& phi, const CMat& z, const Tolerance& tol = {});

/// K = |X| + |Y| for the Cartesian decomposition Z = X + iY.
HermMat cartesian_modulus_sum(const CMat& z, const Tolerance& tol = {});

}  // namespace opineq
