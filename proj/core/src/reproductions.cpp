#include "opineq/reproductions.hpp"

#include <chrono>
#include <cmath>

#include "opineq/decompose.hpp"
#include "opineq/generators.hpp"
#include "opineq/rng.hpp"

namespace opineq {

namespace {

double det_psd(const HermMat& h) {
  double d = 1.0;
  for (double v : eigenvalues(h)) d *= v;
  return d;
}

double rel_err(double value, double expected) { return std::abs(value - expected) / std::abs(expected); }

}  // namespace

TransposeSumReport reproduce_transpose_sum_example(std::size_t draws, std::uint64_t seed, const Tolerance& tol) {
  const auto t0 = std::chrono::steady_clock::now();
  TransposeSumReport rep;
  rep.draws = draws;
  const CMat z{{0.0, 4.0}, {1.0, 0.0}};
  const PosMap phi = PosMap::sum({PosMap::identity(2), PosMap::transpose(2)});

  rep.det_lhs = det_psd(modulus(phi.apply(z), tol));
  rep.lhs_rel_error = rel_err(rep.det_lhs, 25.0);

  const HermMat a0 = HermMat::symmetrize(phi.apply(modulus(z, tol).mat()));
  const HermMat b0 = HermMat::symmetrize(phi.apply(comodulus(z, tol).mat()));
  rep.split_fails_for_all_draws = true;
  for (std::size_t d = 0; d < draws; ++d) {
    Rng rng(derive_seed(seed, 0x28, d));
    const CMat u = haar_unitary(2, rng);
    const CMat v = haar_unitary(2, rng);
    const HermMat a = HermMat::symmetrize(u * a0.mat() * u.adjoint());
    const HermMat b = HermMat::symmetrize(v * b0.mat() * v.adjoint());
    const double dm = det_psd(geometric_mean(a, b, tol));
    rep.det_rhs.push_back(dm);
    rep.rhs_max_rel_error = std::max(rep.rhs_max_rel_error, rel_err(dm, 16.0));
    const double ab = det_psd(a) * det_psd(b);
    rep.det_identity_residual = std::max(rep.det_identity_residual, std::abs(dm * dm - ab) / ab);
    if (!(rep.det_lhs > dm)) rep.split_fails_for_all_draws = false;
  }

  try {
    (void)check_two_positive_split(phi, z, 0.0, tol);
  } catch (const Error& e) {
    rep.refused_by_two_positive_check = e.kind() == ErrorKind::ClassViolation;
  }
  rep.level2_witness = sample_positivity_falsifier(phi, 2, 10000, seed, tol);

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.pass = rep.lhs_rel_error <= 1e-9 && rep.rhs_max_rel_error <= 1e-9 && rep.split_fails_for_all_draws &&
             rep.refused_by_two_positive_check && rep.level2_witness.has_value();
  return rep;
}

SharpnessReport reproduce_sharpness(double k, std::size_t random_v, std::uint64_t seed, const Tolerance& tol) {
  if (!(k > 0.0)) throw Error(ErrorKind::DomainError, "sharpness probe needs k > 0");
  SharpnessReport rep;
  rep.k = k;
  rep.bound = std::sqrt(k);
  const CMat z{{0.0, 1.0}, {k, 0.0}};
  const PosMap phi = PosMap::transpose(2);

  rep.rho = modulus_ratio_radius(z, tol);
  const HermMat lhs = modulus(phi.apply(z), tol);
  rep.e2_lhs = lhs(1);

  const HermMat phi_mod = HermMat::symmetrize(phi.apply(modulus(z, tol).mat()));
  auto e2_mean = [&](const CMat& v) {
    const HermMat vbv = HermMat::symmetrize(v * phi_mod.mat() * v.adjoint());
    return geometric_mean(phi_mod, vbv, tol)(1);
  };
  const CMat v = witness_unitary(phi, z, tol);
  rep.e2_mean = e2_mean(v);
  rep.required_constant = rep.e2_lhs / rep.e2_mean;

  rep.min_constant_random_v = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < random_v; ++t) {
    Rng rng(derive_seed(seed, 0x25, t));
    rep.min_constant_random_v = std::min(rep.min_constant_random_v, rep.e2_lhs / e2_mean(haar_unitary(2, rng)));
  }

  rep.scaled_bound = check_spectral_radius_corollary(phi, z, rep.rho, tol);
  rep.pass = std::abs(rep.rho - k) <= 1e-10 * std::max(1.0, k) && rep.required_constant >= rep.bound * (1.0 - 1e-6) &&
             rep.scaled_bound.pass;
  return rep;
}

CexSearchReport find_counterexamples_remarks(std::size_t trials, std::uint64_t seed, const CexSearchOptions& opts,
                                             const Tolerance& tol) {
  if (trials == 0) throw Error(ErrorKind::InvalidSpec, "counterexample search needs trials >= 1");
  if (opts.dims.empty()) throw Error(ErrorKind::InvalidSpec, "counterexample search needs a dimension");
  CexSearchReport rep;
  auto keep = [](std::optional<CexWitness>& slot, const CMat& z, double margin, std::size_t t) {
    if (!slot || margin > slot->margin) slot = CexWitness{z, margin, t};
  };
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, 0x3810, t));
    const std::size_t n = opts.dims[t % opts.dims.size()];
    const CMat z = opts.sampling == SearchSampling::Hermitian ? random_hermitian(n, rng).mat() : ginibre(n, n, rng);
    ++rep.trials_run;

    const HermMat k = cartesian_modulus_sum(z, tol);
    const HermMat mz = modulus(z, tol);
    const double nz = operator_norm(z);
    if (nz == 0.0) continue;

    const HermMat k_isqrt = generalized_power(k, -0.5, tol);
    const HermMat k_inv = generalized_power(k, -1.0, tol);

    const double radius = spectral_radius(z * k_inv.mat());
    const double cong = operator_norm(k_isqrt.mat() * z * k_isqrt.mat());
    rep.max_radius = std::max(rep.max_radius, radius);
    rep.max_congruence_norm = std::max(rep.max_congruence_norm, cong);
    if (radius > 1.0 + 2.0 * tol.abs || cong > 1.0 + 2.0 * tol.abs) {
      rep.bounds_held_everywhere = false;
      ++rep.bound_failures;
    }

    const double m_a = -loewner_leq(mz, k, tol).slack / nz;
    if (m_a > opts.min_margin) keep(rep.modulus_bound, z, m_a, t);
    const double m_b = operator_norm(sqrt_psd(mz, tol).mat() * k_isqrt.mat()) - 1.0;
    if (m_b > opts.min_margin) keep(rep.half_power, z, m_b, t);
    const double m_c = operator_norm(z * k_inv.mat()) - 1.0;
    if (m_c > opts.min_margin) {
      const bool better = !rep.inverse_product || m_c > rep.inverse_product->margin;
      keep(rep.inverse_product, z, m_c, t);
      if (better) rep.radius_at_witness = radius;
    }
  }
  if (opts.require_all && !rep.all_found()) {
    std::string missing;
    if (!rep.modulus_bound) missing += " modulus_bound";
    if (!rep.half_power) missing += " half_power";
    if (!rep.inverse_product) missing += " inverse_product";
    throw Error(ErrorKind::SearchExhausted, "no witness within " + std::to_string(trials) + " trials for" + missing);
  }
  return rep;
}

}  // namespace opineq
