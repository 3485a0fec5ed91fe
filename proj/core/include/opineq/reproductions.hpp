#pragma once

// Fixed numerical examples and randomized counterexample searches.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opineq/checks.hpp"

namespace opineq {

/// Z = [[0, 4], [1, 0]] under the merely positive map X -> X + X^T.
struct TransposeSumReport {
  double det_lhs = 0.0;            ///< det |Phi(Z)|
  std::vector<double> det_rhs;     ///< det(U Phi(|Z|) U^* # V Phi(|Z^*|) V^*) per draw
  double lhs_rel_error = 0.0;      ///< against 25
  double rhs_max_rel_error = 0.0;  ///< against 16
  /// max over draws of |det(A # B)^2 - det A det B| / (det A det B).
  double det_identity_residual = 0.0;
  /// Every draw has det lhs > det rhs, so no pair (U, V) rescues the split.
  bool split_fails_for_all_draws = false;
  /// The two-positive check refuses the map.
  bool refused_by_two_positive_check = false;
  /// Level-2 falsifier output for the map.
  std::optional<PositivityWitness> level2_witness;
  std::size_t draws = 0;
  double seconds = 0.0;
  bool pass = false;
};

TransposeSumReport reproduce_transpose_sum_example(std::size_t draws = 100, std::uint64_t seed = 28,
                                                   const Tolerance& tol = {});

/// Z = [[0, 1], [k, 0]] under the transpose map.
struct SharpnessReport {
  double k = 0.0;
  double rho = 0.0;             ///< rho(|Z^*| |Z|^{-1}), expected k
  double e2_lhs = 0.0;          ///< <e2, |Z^T| e2>, expected k
  double e2_mean = 0.0;         ///< <e2, Phi(|Z|) # V Phi(|Z|) V^* e2> with the constructed V
  double required_constant = 0.0;  ///< e2_lhs / e2_mean
  double bound = 0.0;           ///< sqrt(k)
  /// Smallest e2 ratio over random unitaries V; never below sqrt(k).
  double min_constant_random_v = 0.0;
  Certificate scaled_bound;     ///< sqrt(rho)-prefactored inequality
  bool pass = false;
};

SharpnessReport reproduce_sharpness(double k, std::size_t random_v = 200, std::uint64_t seed = 25,
                                    const Tolerance& tol = {});

enum class SearchSampling { Ginibre, Hermitian };

struct CexSearchOptions {
  SearchSampling sampling = SearchSampling::Ginibre;
  std::vector<std::size_t> dims = {2, 3};
  double min_margin = 1e-6;
  /// Throw SearchExhausted unless all three witnesses are found.
  bool require_all = true;
};

struct CexWitness {
  CMat z;
  double margin = 0.0;
  std::size_t trial = 0;
};

struct CexSearchReport {
  /// |Z| <= |X| + |Y| fails; margin = -lambda_min(K - |Z|) / |Z|.
  std::optional<CexWitness> modulus_bound;
  /// | |Z|^{1/2} K^{-1/2} | > 1; margin = norm - 1.
  std::optional<CexWitness> half_power;
  /// | Z K^{-1} | > 1; margin = norm - 1.
  std::optional<CexWitness> inverse_product;
  /// rho(Z K^{-1}) at the inverse_product witness.
  double radius_at_witness = 0.0;
  std::size_t trials_run = 0;
  /// rho(Z K^{-1}) <= 1 and |K^{-1/2} Z K^{-1/2}| <= 1 on every sample.
  bool bounds_held_everywhere = true;
  std::size_t bound_failures = 0;
  double max_radius = 0.0;
  double max_congruence_norm = 0.0;

  bool all_found() const { return modulus_bound && half_power && inverse_product; }
};

CexSearchReport find_counterexamples_remarks(std::size_t trials, std::uint64_t seed,
                                             const CexSearchOptions& opts = {}, const Tolerance& tol = {});

}  // namespace opineq
