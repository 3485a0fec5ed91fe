#include "opineq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opineq {

std::string_view to_string(Ensemble e) {
  switch (e) {
    case Ensemble::Ginibre: return "ginibre";
    case Ensemble::HaarUnitary: return "haar_unitary";
    case Ensemble::WishartPsd: return "wishart_psd";
    case Ensemble::RandomNormal: return "random_normal_matrix";
    case Ensemble::RandomContraction: return "random_contraction";
    case Ensemble::RandomSemiHyponormal: return "random_semi_hyponormal";
  }
  return "unknown";
}

Ensemble ensemble_from_string(std::string_view s) {
  for (Ensemble e : {Ensemble::Ginibre, Ensemble::HaarUnitary, Ensemble::WishartPsd, Ensemble::RandomNormal,
                     Ensemble::RandomContraction, Ensemble::RandomSemiHyponormal}) {
    if (to_string(e) == s) return e;
  }
  throw Error(ErrorKind::ParseError, "unknown ensemble '" + std::string(s) + "'");
}

CMat ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  CMat g(rows, cols);
  for (auto& v : g.data()) v = rng.complex_normal();
  return g;
}

CMat haar_unitary(std::size_t n, Rng& rng) { return orthonormalize_columns(ginibre(n, n, rng)); }

CMat random_isometry(std::size_t n, std::size_t k, Rng& rng) {
  return orthonormalize_columns(ginibre(n, k, rng));
}

HermMat wishart_psd(std::size_t n, std::size_t rank, Rng& rng) {
  const CMat g = ginibre(n, rank, rng);
  return HermMat::symmetrize(g * g.adjoint() * (1.0 / static_cast<double>(std::max<std::size_t>(rank, 1))));
}

HermMat random_hermitian(std::size_t n, Rng& rng) {
  const CMat g = ginibre(n, n, rng);
  return HermMat::symmetrize((g + g.adjoint()) * 0.5);
}

CMat random_normal_matrix(std::size_t n, Rng& rng) {
  const CMat u = haar_unitary(n, rng);
  std::vector<cplx> z(n);
  for (auto& v : z) v = rng.complex_normal();
  return u * CMat::diagonal(std::span<const cplx>(z)) * u.adjoint();
}

CMat random_contraction(std::size_t n, Rng& rng) {
  const CMat g = ginibre(n, n, rng);
  const double r = rng.coin(0.25) ? 1.0 : rng.uniform(0.2, 1.0);
  const double nrm = operator_norm(g);
  return nrm == 0.0 ? g : g * (r / nrm);
}

CMat random_semi_hyponormal(std::size_t n, Rng& rng) {
  const CMat w = haar_unitary(n, rng);
  // Group the coordinates into eigenspaces of P.
  const std::size_t groups = 1 + rng.index(n);
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i < groups ? i : rng.index(groups);
  std::vector<double> level(groups);
  for (auto& l : level) l = rng.uniform(0.1, 2.0);

  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = level[label[i]];

  CMat d(n, n);
  for (std::size_t g = 0; g < groups; ++g) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (label[i] == g) idx.push_back(i);
    const CMat u = haar_unitary(idx.size(), rng);
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) d(idx[a], idx[b]) = u(a, b);
  }
  const CMat unitary = w * d * w.adjoint();
  const CMat psd = w * CMat::diagonal(std::span<const double>(p)) * w.adjoint();
  return unitary * psd;
}

CMat random_rank_deficient(std::size_t n, std::size_t rank, Rng& rng) {
  return ginibre(n, rank, rng) * ginibre(rank, n, rng) * (1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(rank, 1))));
}

CMat generate(const GeneratorConfig& cfg, std::size_t n, Rng& rng) {
  CMat z;
  switch (cfg.ensemble) {
    case Ensemble::Ginibre: z = ginibre(n, n, rng); break;
    case Ensemble::HaarUnitary: z = haar_unitary(n, rng); break;
    case Ensemble::WishartPsd: z = wishart_psd(n, n, rng).mat(); break;
    case Ensemble::RandomNormal: z = random_normal_matrix(n, rng); break;
    case Ensemble::RandomContraction: z = random_contraction(n, rng); break;
    case Ensemble::RandomSemiHyponormal: z = random_semi_hyponormal(n, rng); break;
  }
  // Scaling would break the defining property of unitaries and contractions.
  if (cfg.scale != 1.0 && cfg.ensemble != Ensemble::HaarUnitary && cfg.ensemble != Ensemble::RandomContraction) {
    z *= cfg.scale;
  }
  return z;
}

CMat generate(const GeneratorConfig& cfg, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return generate(cfg, n, rng);
}

}  // namespace opineq
