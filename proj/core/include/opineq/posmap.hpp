#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "opineq/linalg.hpp"

namespace opineq {

/// Ordered weakest to strongest.
enum class PositivityClass { Positive = 0, TwoPositive = 1, CompletelyPositive = 2 };

enum class MapFamily {
  Identity,
  Transpose,
  PartialTrace2x2,
  KrausSum,
  SchurMultiplier,
  Congruence,
  Sum,
  Compose,
};

std::string_view to_string(PositivityClass c);
std::string_view to_string(MapFamily f);
PositivityClass positivity_class_from_string(std::string_view s);
MapFamily map_family_from_string(std::string_view s);

/// A positive linear map M_n -> M_m described by its construction. Values
/// are immutable and cheap to copy (shared tree). Positivity is a property
/// of the construction: every family has a known class and Sum / Compose
/// take the weakest class of their parts.
class PosMap {
 public:
  static PosMap identity(std::size_t n);
  static PosMap transpose(std::size_t n);
  /// [[A, B], [C, D]] -> A + D on M_2(M_n).
  static PosMap partial_trace_2x2(std::size_t block_dim);
  /// X -> sum_i K_i X K_i^*; all operators m x n.
  static PosMap kraus_sum(std::vector<CMat> operators);
  /// X -> S o X; S must be PSD (ClassViolation otherwise).
  static PosMap schur_multiplier(const HermMat& s, const Tolerance& tol = {});
  /// X -> K X K^*.
  static PosMap congruence(const CMat& k);
  static PosMap sum(std::vector<PosMap> terms);
  /// outer o inner.
  static PosMap compose(const PosMap& outer, const PosMap& inner);

  /// Same map with a weaker declared class. Declaring a stronger class than
  /// the construction guarantees is a ClassViolation.
  PosMap with_declared_class(PositivityClass c) const;

  MapFamily family() const;
  std::size_t in_dim() const;
  std::size_t out_dim() const;
  PositivityClass declared_class() const;
  PositivityClass derived_class() const;
  bool at_least(PositivityClass c) const { return declared_class() >= c; }

  /// Operators for KrausSum (list), SchurMultiplier (S), Congruence (K).
  const std::vector<CMat>& operators() const;
  /// Terms for Sum; {outer, inner} for Compose.
  const std::vector<PosMap>& children() const;

  CMat apply(const CMat& x) const;
  CMat operator()(const CMat& x) const { return apply(x); }

  /// (id_level (x) Phi) on a level x level block matrix of in_dim blocks.
  CMat apply_amplified(const CMat& x, std::size_t level) const;

 private:
  struct Node;
  explicit PosMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Psi(X) = Phi(J^{1/2} X J^{1/2}).
PosMap compress_map(const PosMap& phi, const HermMat& j, const Tolerance& tol = {});

struct ChoiMatrix {
  HermMat matrix;  ///< block (i, j) = Phi(E_ij), dimension n * m
  PosMap source;
};

ChoiMatrix choi_matrix(const PosMap& phi);

struct PositivityWitness {
  CMat input;           ///< PSD input in M_level(M_n)
  double min_eigenvalue;  ///< lambda_min of the amplified output
  std::size_t trial;
};

/// Random search for a PSD X in M_level(M_n) with (id (x) Phi)(X) not PSD.
/// Inputs are Wishart matrices of random rank (rank one is drawn often).
/// Finding nothing is not a proof of positivity.
std::optional<PositivityWitness> sample_positivity_falsifier(const PosMap& phi, std::size_t level,
                                                             std::size_t trials, std::uint64_t seed,
                                                             const Tolerance& tol = {});

}  // namespace opineq
