#include "opineq/instances.hpp"

#include <algorithm>
#include <cmath>

#include "opineq/decompose.hpp"
#include "opineq/generators.hpp"
#include "opineq/means.hpp"

namespace opineq {

json instance_to_json(const Instance& inst) {
  json j = {{"check_id", inst.check_id}, {"map", posmap_to_json(inst.map)}, {"z", matrix_to_json(inst.z)}};
  if (inst.j) j["j"] = matrix_to_json(inst.j->mat());
  if (inst.funpair) j["funpair"] = funpair_to_json(*inst.funpair);
  if (inst.check_id == "check_two_positive_split") j["p"] = inst.p;
  if (inst.rho > 0.0) j["rho"] = inst.rho;
  return j;
}

Instance instance_from_json(const json& j, const Tolerance& tol) {
  try {
    Instance inst{j.at("check_id").get<std::string>(), posmap_from_json(j.at("map"), tol), matrix_from_json(j.at("z")),
                  std::nullopt, std::nullopt, j.value("p", 0.0), j.value("rho", 0.0)};
    if (j.contains("j") && !j.at("j").is_null()) inst.j = herm_from_json(j.at("j"), tol);
    if (j.contains("funpair") && !j.at("funpair").is_null()) inst.funpair = funpair_from_json(j.at("funpair"));
    return inst;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("instance: ") + e.what());
  }
}

const std::vector<std::string>& known_check_ids() {
  static const std::vector<std::string> ids = {
      "check_russo_dye",
      "check_arithmetic_domination",
      "check_geometric_domination",
      "check_two_positive_split",
      "check_normal_corollary",
      "check_contraction_corollary",
      "check_range_corollary",
      "check_spectral_radius_corollary",
      "check_semi_hyponormal_corollary",
      "check_log_majorization",
      "check_eigenvalue_gaps",
      "check_reverse_product",
      "check_cartesian_suite",
      "check_schur_gaps",
      "check_schur_remark",
  };
  return ids;
}

namespace {

const HermMat& need_j(const Instance& inst) {
  if (!inst.j) throw Error(ErrorKind::InvalidSpec, inst.check_id + " needs J");
  return *inst.j;
}

FunPair pair_of(const Instance& inst) { return inst.funpair.value_or(FunPair::power(0.0)); }

HermMat schur_factor(const Instance& inst) {
  if (inst.map.family() != MapFamily::SchurMultiplier) {
    throw Error(ErrorKind::InvalidSpec, inst.check_id + " needs a schur_multiplier map");
  }
  return HermMat::symmetrize(inst.map.operators().front());
}

double root(double v, std::size_t k) { return v <= 0.0 ? 0.0 : std::pow(v, 1.0 / static_cast<double>(k)); }

Certificate summary_cert(const std::string& id, std::vector<double> l, std::vector<double> r, bool pass,
                         const Tolerance& tol) {
  Certificate c;
  c.check_id = id;
  c.tolerances = tol;
  c.lhs = HermMat::diagonal(l);
  c.rhs = HermMat::diagonal(r);
  c.slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < l.size(); ++i) c.slack = std::min(c.slack, r[i] - l[i]);
  if (l.empty()) c.slack = 0.0;
  c.pass = pass;
  return c;
}

Certificate from_report(const std::string& id, const MajorizationReport& r, const Tolerance& tol) {
  std::vector<double> l, rr;
  for (std::size_t k = 0; k < r.k_products_lhs.size(); ++k) {
    l.push_back(root(r.k_products_lhs[k], k + 1));
    rr.push_back(root(r.k_products_rhs[k], k + 1));
  }
  Certificate c = summary_cert(id, l, rr, r.pass, tol);
  c.notes = "k-th roots of prefix products";
  return c;
}

Certificate from_report(const std::string& id, const GapReport& r, const Tolerance& tol) {
  std::vector<double> l, rr;
  for (const auto& e : r.entries) {
    l.push_back(e.lhs);
    rr.push_back(e.rhs);
  }
  Certificate c = summary_cert(id, l, rr, r.pass, tol);
  c.notes = "one diagonal entry per (j, k)";
  return c;
}

Certificate from_report(const std::string& id, const ReverseProductReport& r, const Tolerance& tol) {
  std::vector<double> l, rr;
  for (std::size_t k = 0; k < r.lhs.size(); ++k) {
    l.push_back(root(r.lhs[k], 2 * (k + 1)));
    rr.push_back(root(r.rhs[k], 2 * (k + 1)));
  }
  Certificate c = summary_cert(id, l, rr, r.pass, tol);
  c.notes = "2k-th roots of prefix products";
  return c;
}

}  // namespace

CheckOutcome run_check(const Instance& inst, const Tolerance& tol) {
  const std::string& id = inst.check_id;
  const PosMap& phi = inst.map;
  const CMat& z = inst.z;
  CheckOutcome out;
  if (id == "check_russo_dye") {
    out.cert = check_russo_dye(phi, z, tol);
  } else if (id == "check_arithmetic_domination") {
    out.cert = check_arithmetic_domination(phi, z, need_j(inst), pair_of(inst), tol);
  } else if (id == "check_geometric_domination") {
    out.cert = check_geometric_domination(phi, z, need_j(inst), pair_of(inst), tol);
  } else if (id == "check_two_positive_split") {
    out.cert = check_two_positive_split(phi, z, inst.p, tol);
  } else if (id == "check_normal_corollary") {
    out.cert = check_normal_corollary(phi, z, tol);
  } else if (id == "check_contraction_corollary") {
    out.cert = check_contraction_corollary(phi, z, tol);
  } else if (id == "check_range_corollary") {
    out.cert = check_range_corollary(phi, z, need_j(inst), tol);
  } else if (id == "check_spectral_radius_corollary") {
    out.cert = check_spectral_radius_corollary(phi, z, inst.rho, tol);
  } else if (id == "check_semi_hyponormal_corollary") {
    out.cert = check_semi_hyponormal_corollary(phi, z, tol);
  } else if (id == "check_log_majorization") {
    const auto r = check_log_majorization(phi, z, need_j(inst), pair_of(inst), tol);
    out.cert = from_report(id, r, tol);
    out.report = report_to_json(r);
  } else if (id == "check_eigenvalue_gaps") {
    const auto r = check_eigenvalue_gaps(phi, z, need_j(inst), pair_of(inst), tol);
    out.cert = from_report(id, r, tol);
    out.report = report_to_json(r);
  } else if (id == "check_reverse_product") {
    const auto r = check_reverse_product(phi, z, need_j(inst), pair_of(inst), tol);
    out.cert = from_report(id, r, tol);
    out.report = report_to_json(r);
  } else if (id == "check_cartesian_suite") {
    const auto r = check_cartesian_suite(phi, z, tol);
    out.cert = r.mean_bound;
    out.cert.pass = r.pass;
    out.cert.aux.push_back({"log_majorization", 1.0 - r.majorization.worst_ratio, r.majorization.pass});
    out.cert.aux.push_back({"congruence_norm", 1.0 - r.congruence_norm, r.congruence_pass});
    out.cert.aux.push_back({"radius", 1.0 - r.radius, r.radius_pass});
    out.report = report_to_json(r);
  } else if (id == "check_schur_gaps") {
    const auto r = check_schur_gaps(schur_factor(inst), z, tol);
    out.cert = from_report(id, r, tol);
    out.report = report_to_json(r);
  } else if (id == "check_schur_remark") {
    const auto r = check_schur_remark(schur_factor(inst), tol);
    out.cert = from_report(id, r, tol);
    out.report = report_to_json(r);
  } else {
    throw Error(ErrorKind::InvalidSpec, "unknown check id '" + id + "'");
  }
  if (out.cert.inputs_digest.empty()) {
    const CMat jm = inst.j ? inst.j->mat() : CMat();
    out.cert.inputs_digest = digest_inputs({&z, &jm}, {inst.p, inst.rho});
  }
  return out;
}

const std::vector<std::string>& known_map_families() {
  static const std::vector<std::string> fams = {"identity",         "transpose",  "partial_trace_2x2",
                                                "kraus_sum",        "schur_multiplier", "congruence",
                                                "sum",              "compose",    "transpose_sum"};
  return fams;
}

namespace {

PosMap random_kraus(std::size_t n, std::size_t m, Rng& rng) {
  const std::size_t r = 1 + rng.index(3);
  std::vector<CMat> ops;
  for (std::size_t i = 0; i < r; ++i) ops.push_back(ginibre(m, n, rng) * (1.0 / std::sqrt(double(r * n))));
  return PosMap::kraus_sum(std::move(ops));
}

PosMap random_schur(std::size_t n, Rng& rng) { return PosMap::schur_multiplier(wishart_psd(n, 1 + rng.index(n), rng)); }

PosMap random_congruence(std::size_t n, std::size_t m, Rng& rng) {
  return PosMap::congruence(ginibre(m, n, rng) * (1.0 / std::sqrt(double(n))));
}

}  // namespace

PosMap random_map(const std::string& family, std::size_t n, std::size_t m, Rng& rng) {
  if (n == 0 || m == 0) throw Error(ErrorKind::InvalidSpec, "map dimensions must be >= 1");
  if (family == "identity") return PosMap::identity(n);
  if (family == "transpose") return PosMap::transpose(n);
  if (family == "partial_trace_2x2") return PosMap::partial_trace_2x2(m);
  if (family == "kraus_sum") return random_kraus(n, m, rng);
  if (family == "schur_multiplier") return random_schur(n, rng);
  if (family == "congruence") return random_congruence(n, m, rng);
  if (family == "sum") {
    const PosMap cp = random_kraus(n, m, rng);
    std::vector<CMat> ops;
    for (const auto& k : cp.operators()) ops.push_back(k * 0.5);
    return PosMap::sum({PosMap::kraus_sum(std::move(ops)),
                        PosMap::compose(PosMap::transpose(m), random_congruence(n, m, rng))});
  }
  if (family == "compose") return PosMap::compose(random_schur(m, rng), random_kraus(n, m, rng));
  if (family == "transpose_sum") return PosMap::sum({PosMap::identity(n), PosMap::transpose(n)});
  throw Error(ErrorKind::InvalidSpec, "unknown map family '" + family + "'");
}

namespace {

double random_scale(Rng& rng) { return std::pow(10.0, rng.uniform(-1.0, 1.0)); }

/// Mixed ensemble: Ginibre, rank deficient, normal and PSD samples.
CMat sample_z(std::size_t n, Rng& rng) {
  const double u = rng.uniform();
  CMat z;
  if (u < 0.6 || n == 1) z = ginibre(n, n, rng);
  else if (u < 0.8) z = random_rank_deficient(n, 1 + rng.index(n - 1), rng);
  else if (u < 0.9) z = random_normal_matrix(n, rng);
  else z = wishart_psd(n, n, rng).mat();
  return z * random_scale(rng);
}

HermMat random_extra(std::size_t n, double scale, Rng& rng) {
  return wishart_psd(n, 1 + rng.index(n), rng) * (scale * rng.uniform(0.0, 0.5));
}

/// J with f(|Z|) <= J and g(|Z^*|) <= J.
HermMat dominating_j(const CMat& z, const FunPair& fp, Rng& rng, const Tolerance& tol) {
  const HermMat f = fp.apply_f(modulus(z, tol), tol);
  const HermMat g = fp.apply_g(comodulus(z, tol), tol);
  const std::size_t n = z.rows();
  const double s = std::max(lambda_max(f), lambda_max(g));
  const double u = rng.uniform();
  if (fp.kind == FunPairKind::Power && fp.param == 0.0 && u < 0.2) {
    return rng.coin() ? kato_supremum(z, tol) : q_mean(z, rng.uniform(1.0, 4.0), tol);
  }
  if (u < 0.55) return spectral_supremum(f, g, tol);
  if (u < 0.75) return f + g;
  return spectral_supremum(f, g, tol) + random_extra(n, s, rng);
}

FunPair random_pair(FunPairKind kind, const CMat& z, Rng& rng, HermMat* tight_j, const Tolerance& tol) {
  switch (kind) {
    case FunPairKind::Power: {
      static const double grid[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
      return FunPair::power(rng.coin() ? grid[rng.index(5)] : rng.uniform(-1.0, 1.0));
    }
    case FunPairKind::Range: return FunPair::range();
    case FunPairKind::Scaled: {
      if (tight_j && rng.coin()) {
        const double rho = modulus_ratio_radius(z, tol);
        if (rho > 0.0) {
          *tight_j = modulus(z, tol) * std::sqrt(rho);
          return FunPair::scaled(rho);
        }
      }
      return FunPair::scaled(std::pow(10.0, rng.uniform(-0.5, 0.5)));
    }
  }
  return FunPair::power(0.0);
}

bool is_pair_check(const std::string& id) {
  return id == "check_arithmetic_domination" || id == "check_geometric_domination" ||
         id == "check_log_majorization" || id == "check_eigenvalue_gaps" || id == "check_reverse_product";
}

std::optional<Instance> attempt(const InstanceRequest& req, Rng& rng, const Tolerance& tol) {
  const std::string& id = req.check_id;
  std::size_t n = req.n;
  std::size_t m = req.m;

  if (id == "check_schur_gaps") {
    const HermMat s = wishart_psd(n, 1 + rng.index(n), rng) * random_scale(rng);
    return Instance{id, PosMap::schur_multiplier(s, tol), random_contraction(n, rng)};
  }
  if (id == "check_schur_remark") {
    HermMat s = wishart_psd(n, 1 + rng.index(n), rng);
    if (rng.coin()) {
      s = HermMat::identity(n) + s * random_scale(rng);
    } else {
      s = s * (rng.uniform(0.3, 1.0) / lambda_max(s));
    }
    return Instance{id, PosMap::schur_multiplier(s, tol), s.mat()};
  }

  PosMap phi = random_map(req.family, n, m, rng);
  n = phi.in_dim();
  m = phi.out_dim();
  (void)m;

  if (id == "check_russo_dye") {
    const CMat a = rng.coin(0.2) ? haar_unitary(n, rng) : random_contraction(n, rng);
    return Instance{id, phi, a};
  }
  if (id == "check_two_positive_split") {
    if (!phi.at_least(PositivityClass::TwoPositive)) {
      throw Error(ErrorKind::InvalidSpec, "two-positive split needs a two-positive family, got " + req.family);
    }
    Instance inst{id, phi, sample_z(n, rng)};
    static const double grid[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    inst.p = req.p ? *req.p : grid[rng.index(5)];
    return inst;
  }
  if (id == "check_cartesian_suite") {
    CMat z = rng.coin(0.1) ? random_hermitian(n, rng).mat() : sample_z(n, rng);
    return Instance{id, phi, z};
  }
  if (id == "check_normal_corollary") {
    CMat z = (rng.coin(0.3) ? random_semi_hyponormal(n, rng) : random_normal_matrix(n, rng)) * random_scale(rng);
    return Instance{id, phi, z};
  }
  if (id == "check_contraction_corollary") return Instance{id, phi, random_contraction(n, rng)};
  if (id == "check_range_corollary") {
    const CMat z = sample_z(n, rng);
    Instance inst{id, phi, z};
    inst.j = dominating_j(z, FunPair::range(), rng, tol);
    inst.funpair = FunPair::range();
    if (!domination_holds(z, *inst.j, FunPair::range(), tol)) return std::nullopt;
    return inst;
  }
  if (id == "check_spectral_radius_corollary") {
    // Invertible Z, so ker |Z| is trivial and |Z^*| <= rho |Z| holds for the computed rho.
    const CMat z = ginibre(n, n, rng) * random_scale(rng);
    Instance inst{id, phi, z};
    const double rho = modulus_ratio_radius(z, tol);
    if (!domination_holds(z, modulus(z, tol) * std::sqrt(rho), FunPair::scaled(rho), tol)) return std::nullopt;
    return inst;
  }
  if (id == "check_semi_hyponormal_corollary") {
    return Instance{id, phi, random_semi_hyponormal(n, rng) * random_scale(rng)};
  }
  if (is_pair_check(id)) {
    const FunPairKind kind = req.kind.value_or(FunPairKind::Power);
    CMat z = kind == FunPairKind::Scaled && rng.coin() ? ginibre(n, n, rng) * random_scale(rng) : sample_z(n, rng);
    HermMat tight;
    const FunPair fp = random_pair(kind, z, rng, &tight, tol);
    Instance inst{id, phi, z};
    inst.funpair = fp;
    inst.j = tight.dim() == n ? tight : dominating_j(z, fp, rng, tol);
    if (!domination_holds(z, *inst.j, fp, tol)) return std::nullopt;
    return inst;
  }
  throw Error(ErrorKind::InvalidSpec, "unknown check id '" + id + "'");
}

}  // namespace

GeneratedInstance generate_instance(const InstanceRequest& req, Rng& rng, const Tolerance& tol) {
  constexpr std::size_t kAttempts = 64;
  for (std::size_t a = 0; a < kAttempts; ++a) {
    if (auto inst = attempt(req, rng, tol)) return {std::move(*inst), a};
  }
  throw Error(ErrorKind::InstanceGenerationFailure,
              "no hypothesis-satisfying instance for " + req.check_id + " after " + std::to_string(kAttempts) +
                  " attempts");
}

}  // namespace opineq
