#pragma once

// Check instances: a serializable (check id, map, inputs) bundle, a uniform
// runner producing a certificate, and random generators that only emit
// hypothesis-satisfying instances.

#include <optional>
#include <string>
#include <vector>

#include "opineq/checks.hpp"
#include "opineq/json_io.hpp"
#include "opineq/rng.hpp"

namespace opineq {

struct Instance {
  std::string check_id;
  PosMap map;
  CMat z;  ///< A for Russo-Dye / Schur gaps, N for the normal form, S for the Schur remark
  std::optional<HermMat> j{};
  std::optional<FunPair> funpair{};
  double p = 0.0;    ///< two-positive split exponent
  double rho = 0.0;  ///< spectral-radius form; 0 means computed
};

json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& j, const Tolerance& tol = {});

/// Every check id accepted by run_check.
const std::vector<std::string>& known_check_ids();

struct CheckOutcome {
  /// Report-type checks are summarized as diagonal lhs / rhs of the compared
  /// scalars; their pass flag is the report's own decision.
  Certificate cert;
  json report;  ///< check-specific detail, null for plain certificates
};

CheckOutcome run_check(const Instance& inst, const Tolerance& tol = {});

/// Map families understood by random_map: the construction families plus
/// "transpose_sum" (X -> X + X^T).
const std::vector<std::string>& known_map_families();

/// Random map with in_dim n and out_dim m where the family allows it.
/// Square families (identity, transpose, schur_multiplier, transpose_sum)
/// use m = n; partial_trace_2x2 has in_dim 2m.
PosMap random_map(const std::string& family, std::size_t n, std::size_t m, Rng& rng);

struct InstanceRequest {
  std::string check_id;
  std::size_t n = 2;
  std::size_t m = 2;
  std::string family = "kraus_sum";
  std::optional<FunPairKind> kind;
  std::optional<double> p;
};

struct GeneratedInstance {
  Instance instance;
  std::size_t resamples = 0;
};

/// InstanceGenerationFailure if no valid instance is found in 64 attempts.
GeneratedInstance generate_instance(const InstanceRequest& req, Rng& rng, const Tolerance& tol = {});

}  // namespace opineq
