#include "opineq/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "opineq/decompose.hpp"

namespace opineq {

std::string_view to_string(FunPairKind k) {
  switch (k) {
    case FunPairKind::Power: return "power";
    case FunPairKind::Range: return "range";
    case FunPairKind::Scaled: return "scaled";
  }
  return "unknown";
}

FunPairKind funpair_kind_from_string(std::string_view s) {
  for (auto k : {FunPairKind::Power, FunPairKind::Range, FunPairKind::Scaled})
    if (to_string(k) == s) return k;
  throw Error(ErrorKind::ParseError, "unknown funpair kind '" + std::string(s) + "'");
}

FunPair FunPair::scaled(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw Error(ErrorKind::DomainError, "scaled pair needs rho > 0");
  return {FunPairKind::Scaled, rho};
}

double FunPair::f(double t) const {
  switch (kind) {
    case FunPairKind::Power: return t > 0.0 ? std::pow(t, 1.0 + param) : 0.0;
    case FunPairKind::Range: return t * t;
    case FunPairKind::Scaled: return std::sqrt(param) * t;
  }
  return 0.0;
}

double FunPair::g(double t) const {
  switch (kind) {
    case FunPairKind::Power: return t > 0.0 ? std::pow(t, 1.0 - param) : 0.0;
    case FunPairKind::Range: return t > 0.0 ? 1.0 : 0.0;
    case FunPairKind::Scaled: return t / std::sqrt(param);
  }
  return 0.0;
}

HermMat FunPair::apply_f(const HermMat& m, const Tolerance& tol) const {
  switch (kind) {
    case FunPairKind::Power: return generalized_power(m, 1.0 + param, tol);
    case FunPairKind::Range: return generalized_power(m, 2.0, tol);
    case FunPairKind::Scaled: return m * std::sqrt(param);
  }
  return m;
}

HermMat FunPair::apply_g(const HermMat& m, const Tolerance& tol) const {
  switch (kind) {
    case FunPairKind::Power: return generalized_power(m, 1.0 - param, tol);
    case FunPairKind::Range: return generalized_power(m, 0.0, tol);
    case FunPairKind::Scaled: return m * (1.0 / std::sqrt(param));
  }
  return m;
}

std::string FunPair::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case FunPairKind::Power: os << "power(p=" << param << ")"; break;
    case FunPairKind::Range: os << "range"; break;
    case FunPairKind::Scaled: os << "scaled(rho=" << param << ")"; break;
  }
  return os.str();
}

bool Certificate::all_pass() const {
  return pass && std::all_of(aux.begin(), aux.end(), [](const AuxCheck& a) { return a.pass; });
}

void settle(Certificate& cert) {
  const LoewnerResult r = loewner_leq(cert.lhs, cert.rhs, cert.tolerances);
  cert.slack = r.slack;
  cert.pass = r.pass;
}

std::string digest_inputs(std::initializer_list<const CMat*> mats, std::initializer_list<double> params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* p, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (const CMat* m : mats) {
    const std::uint64_t shape[2] = {m->rows(), m->cols()};
    feed(shape, sizeof shape);
    feed(m->data().data(), m->data().size() * sizeof(cplx));
  }
  for (double p : params) feed(&p, sizeof p);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void require_instance(const PosMap& phi, const CMat& z, const HermMat& j) {
  require_square(z, "Z");
  if (j.dim() != z.rows()) throw Error(ErrorKind::DimensionMismatch, "J and Z differ in dimension");
  if (phi.in_dim() != z.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "map in_dim " + std::to_string(phi.in_dim()) + " != dim Z " +
                                                  std::to_string(z.rows()));
  }
}

void require_domination(const CMat& z, const HermMat& j, const FunPair& fp, const Tolerance& tol) {
  const DominationResult d = domination(z, j, fp, tol);
  if (!d.holds) {
    std::ostringstream os;
    os << "domination fails for " << fp.describe() << ": slack f " << d.f_slack << ", g " << d.g_slack;
    throw Error(ErrorKind::HypothesisViolated, os.str());
  }
}

double psd_scale(const HermMat& h) {
  const auto ev = eigenvalues(h);
  return ev.empty() ? 0.0 : std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double block_min_eig(const CMat& a11, const CMat& a21, const CMat& a22, double* scale) {
  const std::size_t m = a11.rows();
  CMat b(2 * m, 2 * m);
  b.set_block(0, 0, a11);
  b.set_block(0, m, a21.adjoint());
  b.set_block(m, 0, a21);
  b.set_block(m, m, a22);
  const auto ev = eigenvalues(HermMat::symmetrize(b));
  if (scale) *scale = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return ev.back();
}

AuxCheck loewner_aux(std::string name, const HermMat& a, const HermMat& b, const Tolerance& tol) {
  const LoewnerResult r = loewner_leq(a, b, tol);
  return {std::move(name), r.slack, r.pass};
}

/// Residual checks: slack = bound - residual with bound = abs (1 + scale).
AuxCheck residual_aux(std::string name, double residual, double scale, const Tolerance& tol) {
  const double bound = tol.abs * (1.0 + scale);
  return {std::move(name), bound - residual, residual <= bound};
}

Certificate mean_certificate(std::string id, const HermMat& lhs, const HermMat& a, const HermMat& b, const CMat& v,
                             const Tolerance& tol) {
  Certificate c;
  c.check_id = std::move(id);
  c.tolerances = tol;
  c.lhs = lhs;
  const HermMat vbv = HermMat::symmetrize(v * b.mat() * v.adjoint());
  const MeanResult mean = geometric_mean_detailed(a, vbv, tol);
  c.rhs = mean.value;
  c.used_singular_mean_limit = mean.singular_input;
  c.witness_v = v;
  settle(c);
  return c;
}

void note_witness(Certificate& c, const CMat& phi_z, const Tolerance& tol) {
  const auto sv = eigenvalues(HermMat::symmetrize(phi_z.adjoint() * phi_z));
  const double top = sv.empty() ? 0.0 : sv.front();
  if (!sv.empty() && sv.back() <= tol.cutoff(sv.size()) * top) {
    c.notes += (c.notes.empty() ? "" : "; ");
    c.notes += top == 0.0 ? "Phi(Z) = 0, V = I" : "Phi(Z) singular, V uses the kernel completion";
  }
}

}  // namespace

DominationResult domination(const CMat& z, const HermMat& j, const FunPair& fp, const Tolerance& tol) {
  require_square(z, "Z");
  if (j.dim() != z.rows()) throw Error(ErrorKind::DimensionMismatch, "J and Z differ in dimension");
  const LoewnerResult f = loewner_leq(fp.apply_f(modulus(z, tol), tol), j, tol);
  const LoewnerResult g = loewner_leq(fp.apply_g(comodulus(z, tol), tol), j, tol);
  return {f.pass && g.pass, f.slack, g.slack};
}

bool domination_holds(const CMat& z, const HermMat& j, const FunPair& fp, const Tolerance& tol) {
  return domination(z, j, fp, tol).holds;
}

CMat witness_unitary(const PosMap& phi, const CMat& z, const Tolerance& tol) {
  return polar(phi.apply(z), tol).unitary.adjoint();
}

Certificate check_russo_dye(const PosMap& phi, const CMat& a, const Tolerance& tol) {
  require_square(a, "A");
  if (phi.in_dim() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "map in_dim != dim A");
  const double na = operator_norm(a);
  if (na > 1.0 + tol.abs) throw Error(ErrorKind::NotContraction, "russo-dye input has norm " + std::to_string(na));
  Certificate c;
  c.check_id = "check_russo_dye";
  c.inputs_digest = digest_inputs({&a});
  c.tolerances = tol;
  const double l = operator_norm(phi.apply(a));
  const double r = operator_norm(phi.apply(CMat::identity(a.rows())));
  c.lhs = HermMat::diagonal(std::vector<double>{l});
  c.rhs = HermMat::diagonal(std::vector<double>{r});
  settle(c);
  return c;
}

Certificate check_arithmetic_domination(const PosMap& phi, const CMat& z, const HermMat& j, const FunPair& fp,
                                        const Tolerance& tol) {
  require_instance(phi, z, j);
  require_domination(z, j, fp, tol);
  const CMat phi_z = phi.apply(z);
  const HermMat phi_j = HermMat::symmetrize(phi.apply(j));
  const CMat v = witness_unitary(phi, z, tol);
  Certificate c;
  c.check_id = "check_arithmetic_domination";
  c.inputs_digest = digest_inputs({&z, &j.mat()}, {static_cast<double>(fp.kind), fp.param});
  c.tolerances = tol;
  c.lhs = modulus(phi_z, tol);
  c.rhs = (phi_j + HermMat::symmetrize(v * phi_j.mat() * v.adjoint())) * 0.5;
  c.witness_v = v;
  c.notes = fp.describe();
  note_witness(c, phi_z, tol);
  settle(c);
  return c;
}

Certificate geometric_domination_for(const PosMap& phi, const CMat& z, const HermMat& j, const CMat& v,
                                     const Tolerance& tol) {
  require_instance(phi, z, j);
  const HermMat phi_j = HermMat::symmetrize(phi.apply(j));
  Certificate c = mean_certificate("check_geometric_domination", modulus(phi.apply(z), tol), phi_j, phi_j, v, tol);
  c.inputs_digest = digest_inputs({&z, &j.mat(), &v});
  return c;
}

Certificate check_geometric_domination(const PosMap& phi, const CMat& z, const HermMat& j, const FunPair& fp,
                                       const Tolerance& tol) {
  require_instance(phi, z, j);
  require_domination(z, j, fp, tol);
  const CMat phi_z = phi.apply(z);
  const HermMat phi_j = HermMat::symmetrize(phi.apply(j));
  const CMat v = witness_unitary(phi, z, tol);

  Certificate c = mean_certificate("check_geometric_domination", modulus(phi_z, tol), phi_j, phi_j, v, tol);
  c.inputs_digest = digest_inputs({&z, &j.mat()}, {static_cast<double>(fp.kind), fp.param});
  c.notes = fp.describe();
  note_witness(c, phi_z, tol);

  const HermMat arith = (phi_j + HermMat::symmetrize(v * phi_j.mat() * v.adjoint())) * 0.5;
  c.aux.push_back(loewner_aux("agm_sharpening", c.rhs, arith, tol));

  double bscale = 0.0;
  const double bmin = block_min_eig(phi_j.mat(), phi_z, phi_j.mat(), &bscale);
  c.aux.push_back({"block_positivity", bmin, bmin >= -tol.abs * (1.0 + bscale)});

  // Y = J^{-1/2} Z J^{-1/2} is a contraction and Psi(Y) = Phi(Z).
  const HermMat j_isqrt = generalized_power(j, -0.5, tol);
  const CMat y = j_isqrt.mat() * z * j_isqrt.mat();
  const double ny = operator_norm(y);
  c.aux.push_back({"compressed_contraction", 1.0 - ny, ny <= 1.0 + 2.0 * tol.abs});

  const PosMap psi = compress_map(phi, j, tol);
  const double nz = operator_norm(phi_z);
  c.aux.push_back(residual_aux("psi_reconstruction", (psi.apply(y) - phi_z).max_abs(), nz, tol));

  if (ny <= 1.0 + tol.abs) {
    const UnitaryMean um = unitary_mean_decomposition(y, tol);
    const double res = ((um.u0 + um.u1) * 0.5 - y).max_abs();
    const double def = std::max(unitarity_defect(um.u0), unitarity_defect(um.u1));
    c.aux.push_back(residual_aux("unitary_mean", std::max(res, def), 1.0, tol));
  } else {
    c.aux.push_back({"unitary_mean", 1.0 - ny, false});
  }
  return c;
}

Certificate check_two_positive_split(const PosMap& phi, const CMat& z, double p, const Tolerance& tol) {
  if (!phi.at_least(PositivityClass::TwoPositive)) {
    throw Error(ErrorKind::ClassViolation,
                "two-positive split needs a two-positive map, got " + std::string(to_string(phi.declared_class())));
  }
  require_square(z, "Z");
  if (phi.in_dim() != z.rows()) throw Error(ErrorKind::DimensionMismatch, "map in_dim != dim Z");
  const HermMat f = generalized_power(modulus(z, tol), 1.0 + p, tol);
  const HermMat g = generalized_power(comodulus(z, tol), 1.0 - p, tol);
  const CMat phi_z = phi.apply(z);
  const HermMat phi_f = HermMat::symmetrize(phi.apply(f));
  const HermMat phi_g = HermMat::symmetrize(phi.apply(g));
  const CMat v = witness_unitary(phi, z, tol);

  Certificate c = mean_certificate("check_two_positive_split", modulus(phi_z, tol), phi_f, phi_g, v, tol);
  c.inputs_digest = digest_inputs({&z}, {p});
  std::ostringstream os;
  os.precision(17);
  os << "p=" << p;
  c.notes = os.str();
  note_witness(c, phi_z, tol);

  double bscale = 0.0;
  const double bmin = block_min_eig(phi_f.mat(), phi_z, phi_g.mat(), &bscale);
  c.aux.push_back({"block_positivity", bmin, bmin >= -tol.abs * (1.0 + bscale)});
  return c;
}

Certificate check_normal_corollary(const PosMap& phi, const CMat& n, const Tolerance& tol) {
  require_square(n, "N");
  const double comm = (n.adjoint() * n - n * n.adjoint()).max_abs();
  const double nn = n.max_abs();
  if (comm > tol.abs * (1.0 + nn * nn) * static_cast<double>(n.rows())) {
    throw Error(ErrorKind::HypothesisViolated, "input is not normal (commutator " + std::to_string(comm) + ")");
  }
  Certificate c = check_geometric_domination(phi, n, modulus(n, tol), FunPair::power(0.0), tol);
  c.notes = "normal, J=|N|";
  return c;
}

Certificate check_contraction_corollary(const PosMap& phi, const CMat& a, const Tolerance& tol) {
  require_square(a, "A");
  const double na = operator_norm(a);
  if (na > 1.0 + tol.abs) throw Error(ErrorKind::NotContraction, "input has norm " + std::to_string(na));
  Certificate c = check_geometric_domination(phi, a, HermMat::identity(a.rows()), FunPair::power(0.0), tol);
  c.notes = "contraction, J=I";
  return c;
}

Certificate check_range_corollary(const PosMap& phi, const CMat& z, const HermMat& j, const Tolerance& tol) {
  Certificate c = check_geometric_domination(phi, z, j, FunPair::range(), tol);
  c.notes = "range projection pair";
  return c;
}

double modulus_ratio_radius(const CMat& z, const Tolerance& tol) {
  return spectral_radius_psd_product(comodulus(z, tol), generalized_power(modulus(z, tol), -1.0, tol), tol);
}

Certificate check_spectral_radius_corollary(const PosMap& phi, const CMat& z, double rho, const Tolerance& tol) {
  require_square(z, "Z");
  if (!(rho > 0.0)) rho = modulus_ratio_radius(z, tol);
  if (!(rho > 0.0)) throw Error(ErrorKind::HypothesisViolated, "Z = 0 has no spectral-radius bound");
  const HermMat j = modulus(z, tol) * std::sqrt(rho);
  Certificate c = check_geometric_domination(phi, z, j, FunPair::scaled(rho), tol);
  std::ostringstream os;
  os.precision(17);
  os << "rho=" << rho;
  c.notes = os.str();
  return c;
}

Certificate check_semi_hyponormal_corollary(const PosMap& phi, const CMat& z, const Tolerance& tol) {
  const LoewnerResult r = loewner_leq(comodulus(z, tol), modulus(z, tol), tol);
  if (!r.pass) {
    throw Error(ErrorKind::HypothesisViolated, "|Z^*| <= |Z| fails with slack " + std::to_string(r.slack));
  }
  Certificate c = check_spectral_radius_corollary(phi, z, 1.0, tol);
  c.notes = "semi-hyponormal, rho=1";
  return c;
}

MajorizationReport check_log_majorization(const PosMap& phi, const CMat& z, const HermMat& j, const FunPair& fp,
                                          const Tolerance& tol) {
  require_instance(phi, z, j);
  require_domination(z, j, fp, tol);
  return weak_log_majorizes(modulus(phi.apply(z), tol), HermMat::symmetrize(phi.apply(j)), tol);
}

namespace {

GapReport gap_grid(const std::vector<double>& lhs, const std::vector<double>& rhs, double scale,
                   const Tolerance& tol) {
  GapReport rep;
  const std::size_t m = std::min(lhs.size(), rhs.size());
  rep.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; j + k + 1 <= m; ++k) {
      GapEntry e;
      e.j = j;
      e.k = k;
      e.lhs = lhs[j + k];
      e.rhs = std::sqrt(std::max(rhs[j], 0.0) * std::max(rhs[k], 0.0));
      const double slack = e.rhs - e.lhs;
      e.pass = slack >= -tol.abs * (1.0 + scale);
      rep.min_slack = std::min(rep.min_slack, slack);
      rep.pass = rep.pass && e.pass;
      rep.entries.push_back(e);
    }
  }
  if (rep.entries.empty()) rep.min_slack = 0.0;
  return rep;
}

}  // namespace

GapReport check_eigenvalue_gaps(const PosMap& phi, const CMat& z, const HermMat& j, const FunPair& fp,
                                const Tolerance& tol) {
  require_instance(phi, z, j);
  require_domination(z, j, fp, tol);
  const HermMat phi_j = HermMat::symmetrize(phi.apply(j));
  return gap_grid(clamped_spectrum(modulus(phi.apply(z), tol), tol), clamped_spectrum(phi_j, tol), psd_scale(phi_j),
                  tol);
}

GapReport check_schur_gaps(const HermMat& s, const CMat& a, const Tolerance& tol) {
  require_square(a, "A");
  if (s.dim() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "S and A differ in dimension");
  const double na = operator_norm(a);
  if (na > 1.0 + tol.abs) throw Error(ErrorKind::NotContraction, "schur gaps need a contraction");
  std::vector<double> d(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) d[i] = s(i);
  std::sort(d.begin(), d.end(), std::greater<>());
  const double scale = d.empty() ? 0.0 : std::abs(d.front());
  return gap_grid(clamped_spectrum(modulus(schur_product(s, a), tol), tol), d, scale, tol);
}

GapReport check_schur_remark(const HermMat& s, const Tolerance& tol) {
  const auto ev = eigenvalues(s);
  if (ev.empty()) return {};
  const bool expansive = ev.back() >= 1.0 - tol.abs;
  const bool contractive = ev.back() >= -tol.abs && ev.front() <= 1.0 + tol.abs;
  if (!expansive && !contractive) {
    throw Error(ErrorKind::HypothesisViolated, "S is neither expansive nor a PSD contraction");
  }
  // S o S^{-1} for S >= I; S o S for 0 <= S <= I. In both cases A is a
  // contraction and the gap bound at (j, j) reads lambda_{2j+1} <= s_{j+1}.
  const CMat a = expansive ? generalized_power(s, -1.0, tol).mat() : s.mat();
  GapReport full = check_schur_gaps(s, a, tol);
  GapReport out;
  out.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& e : full.entries) {
    if (e.j != e.k) continue;
    out.entries.push_back(e);
    out.pass = out.pass && e.pass;
    out.min_slack = std::min(out.min_slack, e.rhs - e.lhs);
  }
  if (out.entries.empty()) out.min_slack = 0.0;
  return out;
}

ReverseProductReport check_reverse_product(const PosMap& phi, const CMat& z, const HermMat& j, const FunPair& fp,
                                           const Tolerance& tol) {
  require_instance(phi, z, j);
  require_domination(z, j, fp, tol);
  const auto down_l = clamped_spectrum(modulus(phi.apply(z), tol), tol);
  const auto down_r = clamped_spectrum(HermMat::symmetrize(phi.apply(j)), tol);
  const std::size_t m = down_l.size();
  ReverseProductReport rep;
  double pl = 1.0;
  double pr = 1.0;
  rep.worst_ratio = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double up_l = down_l[m - 1 - k];
    pl *= up_l * up_l;
    pr *= down_r[m - 1 - k] * down_r[k];
    rep.lhs.push_back(pl);
    rep.rhs.push_back(pr);
    const double ratio = (pl == 0.0 && pr == 0.0) ? 1.0 : (pr == 0.0 ? std::numeric_limits<double>::infinity() : pl / pr);
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    if (!(pl <= pr * (1.0 + tol.rel))) rep.pass = false;
  }
  return rep;
}

HermMat cartesian_modulus_sum(const CMat& z, const Tolerance& tol) {
  const CartesianParts xy = cartesian(z);
  return modulus(xy.re_part.mat(), tol) + modulus(xy.im_part.mat(), tol);
}

CartesianReport check_cartesian_suite(const PosMap& phi, const CMat& z, const Tolerance& tol) {
  require_square(z, "Z");
  if (phi.in_dim() != z.rows()) throw Error(ErrorKind::DimensionMismatch, "map in_dim != dim Z");
  const std::size_t n = z.rows();
  const CartesianParts xy = cartesian(z);
  const HermMat k = cartesian_modulus_sum(z, tol);
  CartesianReport rep;

  // Normal embedding N = diag(X, iY) in M_2n pushed through the partial trace.
  const CMat nrm = direct_sum(xy.re_part.mat(), xy.im_part.mat() * cplx(0.0, 1.0));
  const PosMap psi = PosMap::compose(phi, PosMap::partial_trace_2x2(n));
  rep.embedding_residual = (psi.apply(nrm) - phi.apply(z)).max_abs() +
                           (psi.apply(modulus(nrm, tol).mat()) - phi.apply(k.mat())).max_abs();

  rep.mean_bound = check_geometric_domination(psi, nrm, modulus(nrm, tol), FunPair::power(0.0), tol);
  rep.mean_bound.check_id = "check_cartesian_suite";
  rep.mean_bound.inputs_digest = digest_inputs({&z});
  rep.mean_bound.notes = "K=|X|+|Y| via diag(X, iY)";
  // Same inequality evaluated directly on Phi(Z) and Phi(K).
  {
    const CMat phi_z = phi.apply(z);
    const HermMat phi_k = HermMat::symmetrize(phi.apply(k.mat()));
    const CMat v = witness_unitary(phi, z, tol);
    Certificate direct = mean_certificate("direct", modulus(phi_z, tol), phi_k, phi_k, v, tol);
    rep.mean_bound.aux.push_back({"direct_mean_bound", direct.slack, direct.pass});
  }

  rep.majorization = weak_log_majorizes(modulus(phi.apply(z), tol), HermMat::symmetrize(phi.apply(k.mat())), tol);

  const HermMat k_isqrt = generalized_power(k, -0.5, tol);
  rep.congruence_norm = operator_norm(k_isqrt.mat() * z * k_isqrt.mat());
  rep.congruence_pass = rep.congruence_norm <= 1.0 + 2.0 * tol.abs;
  rep.radius = spectral_radius(z * generalized_power(k, -1.0, tol).mat());
  rep.radius_pass = rep.radius <= 1.0 + 2.0 * tol.abs;

  const auto kev = eigenvalues(k);
  rep.singular_sum = !kev.empty() && kev.back() <= tol.cutoff(n) * kev.front();
  if (rep.singular_sum) rep.mean_bound.notes += "; K singular, generalized inverses used";

  const double escale = 1.0 + operator_norm(phi.apply(k.mat()));
  const bool direct_pass = rep.mean_bound.aux.back().pass;
  rep.pass = rep.mean_bound.pass && direct_pass && rep.majorization.pass && rep.congruence_pass && rep.radius_pass &&
             rep.embedding_residual <= tol.abs * escale;
  return rep;
}

}  // namespace opineq
