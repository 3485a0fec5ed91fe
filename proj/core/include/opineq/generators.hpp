#pragma once

#include <cstdint>
#include <string_view>

#include "opineq/linalg.hpp"
#include "opineq/rng.hpp"

namespace opineq {

enum class Ensemble {
  Ginibre,
  HaarUnitary,
  WishartPsd,
  RandomNormal,
  RandomContraction,
  RandomSemiHyponormal,
};

std::string_view to_string(Ensemble e);
Ensemble ensemble_from_string(std::string_view s);

struct GeneratorConfig {
  Ensemble ensemble = Ensemble::Ginibre;
  double scale = 1.0;
};

/// One n x n sample; deterministic in `seed`.
CMat generate(const GeneratorConfig& cfg, std::size_t n, std::uint64_t seed);
CMat generate(const GeneratorConfig& cfg, std::size_t n, Rng& rng);

/// i.i.d. standard complex Gaussian entries.
CMat ginibre(std::size_t rows, std::size_t cols, Rng& rng);
/// Gram-Schmidt QR of a Ginibre matrix (positive R diagonal), Haar distributed.
CMat haar_unitary(std::size_t n, Rng& rng);
/// First k columns of a Haar unitary.
CMat random_isometry(std::size_t n, std::size_t k, Rng& rng);
/// G G^* / rank with G n x rank Ginibre.
HermMat wishart_psd(std::size_t n, std::size_t rank, Rng& rng);
HermMat random_hermitian(std::size_t n, Rng& rng);
/// U diag(z) U^* with complex Gaussian z.
CMat random_normal_matrix(std::size_t n, Rng& rng);
/// Ginibre rescaled to operator norm r in (0.2, 1]; r = 1 a quarter of the time.
CMat random_contraction(std::size_t n, Rng& rng);
/// Z = U P with P PSD and U acting unitarily inside each eigenspace of P, so
/// |Z^*| = U P U^* = P = |Z|. In finite dimensions semi-hyponormal matrices
/// are exactly the normal ones (|Z| and |Z^*| have equal traces), so this
/// ensemble is a structured normal ensemble with repeated moduli.
CMat random_semi_hyponormal(std::size_t n, Rng& rng);
/// Ginibre product G1 G2 with inner dimension `rank`.
CMat random_rank_deficient(std::size_t n, std::size_t rank, Rng& rng);

}  // namespace opineq
