// opineq: run checks, campaigns and reproductions from the command line.
//
// Human-readable summaries go to stdout. Machine-readable JSON is only ever
// written to the path given with --out (or the campaign spec's output_path).
//
// Exit codes: 0 success, 1 a certificate failed, 2 error.

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "opineq/campaign.hpp"
#include "opineq/decompose.hpp"
#include "opineq/instances.hpp"
#include "opineq/json_io.hpp"
#include "opineq/means.hpp"
#include "opineq/reproductions.hpp"

namespace {

using namespace opineq;

std::uint64_t default_seed() {
  if (const char* s = std::getenv("OPINEQ_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, std::string("OPINEQ_SEED is not an integer: ") + s);
    }
  }
  return 1;
}

void print_matrix(const char* name, const CMat& m) {
  std::cout << name << " (" << m.rows() << "x" << m.cols() << ")\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::cout << "  ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const cplx v = m(i, j);
      std::cout << std::setw(12) << v.real();
      if (v.imag() != 0.0) std::cout << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
      std::cout << ' ';
    }
    std::cout << '\n';
  }
}

void maybe_write(const std::string& path, const json& j) {
  if (!path.empty()) {
    write_json_file(path, j);
    std::cout << "wrote " << path << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opineq: certificate checks for Russo-Dye type operator inequalities"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON file with tolerance overrides {abs, rel, rank_cutoff}");

  // check
  auto* check = app.add_subcommand("check", "Run one check on an instance file");
  std::string check_id, in_path, out_path;
  std::optional<double> tol_override;
  check->add_option("check_id", check_id, "Check id (overrides the instance's)");
  check->add_option("--in", in_path, "Instance JSON")->required();
  check->add_option("--tol", tol_override, "Absolute and relative tolerance");
  check->add_option("--out", out_path, "Certificate JSON output");

  // campaign
  auto* campaign = app.add_subcommand("campaign", "Run a seeded property campaign");
  std::string spec_path;
  std::size_t threads = 0;
  campaign->add_option("--spec", spec_path, "Campaign spec JSON")->required();
  campaign->add_option("--threads", threads, "Worker threads (overrides the spec)");

  // repro
  auto* repro = app.add_subcommand("repro", "Reproduce a fixed example");
  std::string repro_name;
  double k = 4.0;
  std::size_t repro_trials = 10000;
  std::string repro_out;
  repro->add_option("name", repro_name, "transpose-sum (alias example-2.8) | sharpness | cartesian-cex")
      ->required()
      ->check(CLI::IsMember({"transpose-sum", "example-2.8", "sharpness", "cartesian-cex"}));
  repro->add_option("--k", k, "Weight k for the sharpness probe");
  repro->add_option("--trials", repro_trials, "Trials for cartesian-cex");
  repro->add_option("--out", repro_out, "Report JSON output");

  // find-cex
  auto* findcex = app.add_subcommand("find-cex", "Random search for the Cartesian counterexamples");
  std::size_t cex_trials = 10000;
  std::optional<std::uint64_t> cex_seed;
  std::string cex_out;
  findcex->add_option("--trials", cex_trials, "Number of samples");
  findcex->add_option("--seed", cex_seed, "Seed (default: OPINEQ_SEED or 1)");
  findcex->add_option("--out", cex_out, "Report JSON output");

  // mean
  auto* mean = app.add_subcommand("mean", "Geometric mean A # B");
  std::string a_path, b_path, mean_out;
  mean->add_option("--a", a_path, "PSD matrix JSON")->required();
  mean->add_option("--b", b_path, "PSD matrix JSON")->required();
  mean->add_option("--out", mean_out, "Result JSON output");

  // polar
  auto* polar_cmd = app.add_subcommand("polar", "Polar decomposition Z = U |Z|");
  std::string z_path, polar_out;
  polar_cmd->add_option("--in", z_path, "Matrix JSON")->required();
  polar_cmd->add_option("--out", polar_out, "Result JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    Tolerance tol;
    if (!config_path.empty()) {
      const json cfg = read_json_file(config_path);
      tol = tolerance_from_json(cfg.contains("tolerances") ? cfg.at("tolerances") : cfg);
    }

    if (*check) {
      if (tol_override) {
        tol.abs = *tol_override;
        tol.rel = *tol_override;
        if (!tol.valid()) throw Error(ErrorKind::InvalidSpec, "--tol must be positive");
      }
      Instance inst = instance_from_json(read_json_file(in_path), tol);
      if (!check_id.empty()) inst.check_id = check_id;
      const CheckOutcome out = run_check(inst, tol);
      json cert = certificate_to_json(out.cert, instance_to_json(inst));
      if (!out.report.is_null()) cert["report"] = out.report;
      maybe_write(out_path, cert);
      std::cout << inst.check_id << ": " << (out.cert.pass ? "PASS" : "FAIL") << "  slack " << std::setprecision(6)
                << out.cert.slack;
      if (!out.cert.notes.empty()) std::cout << "  (" << out.cert.notes << ")";
      std::cout << '\n';
      for (const auto& a : out.cert.aux) {
        std::cout << "  " << std::left << std::setw(24) << a.name << (a.pass ? "ok" : "FAIL") << "  " << a.slack
                  << '\n';
      }
      return out.cert.pass ? 0 : 1;
    }

    if (*campaign) {
      const json sj = read_json_file(spec_path);
      CampaignSpec spec = campaign_spec_from_json(sj);
      if (!config_path.empty() && !sj.contains("tolerances")) spec.tolerances = tol;
      if (threads > 0) spec.threads = threads;
      const CampaignResult r = run_campaign(spec);
      const auto& s = r.summary;
      std::cout << spec.check_id << ": " << s.completed << "/" << s.trials << " trials, " << s.failures
                << " failures, min slack " << s.min_slack << ", " << s.near_misses << " near misses, " << s.resamples
                << " resamples, " << std::fixed << std::setprecision(2) << r.seconds << " s\n";
      if (s.near_misses > 0) std::cout << "warning: " << s.near_misses << " passing trials with negative slack\n";
      if (s.aux_failures > 0) std::cout << "warning: " << s.aux_failures << " side-condition failures\n";
      if (s.random_v_trials > 0) {
        std::cout << "random V probe: " << s.random_v_failures << "/" << s.random_v_trials << " fail\n";
      }
      if (s.first_failure) {
        std::cout << "first failure at trial " << *s.first_failure << ": " << s.first_failure_reason << '\n';
      }
      if (!spec.output_path.empty()) std::cout << "wrote " << spec.output_path << '\n';
      return r.ok() ? 0 : 1;
    }

    if (*repro) {
      if (repro_name == "transpose-sum" || repro_name == "example-2.8") {
        const auto r = reproduce_transpose_sum_example(100, default_seed(), tol);
        std::cout << "Z = [[0, 4], [1, 0]], Phi(X) = X + X^T, " << r.draws << " unitary pairs\n"
                  << std::setprecision(12) << "det |Phi(Z)|            = " << r.det_lhs << "   (expected 25)\n"
                  << "det of the mean (range)  = [" << *std::min_element(r.det_rhs.begin(), r.det_rhs.end()) << ", "
                  << *std::max_element(r.det_rhs.begin(), r.det_rhs.end()) << "]   (expected 16)\n"
                  << "max relative errors      = " << r.lhs_rel_error << ", " << r.rhs_max_rel_error << '\n'
                  << "refused by two-positive check: " << (r.refused_by_two_positive_check ? "yes" : "no") << '\n'
                  << "level-2 positivity witness:    "
                  << (r.level2_witness ? "found at trial " + std::to_string(r.level2_witness->trial) : "none") << '\n'
                  << (r.pass ? "PASS" : "FAIL") << '\n';
        maybe_write(repro_out, report_to_json(r));
        return r.pass ? 0 : 1;
      }
      if (repro_name == "sharpness") {
        const auto r = reproduce_sharpness(k, 200, default_seed(), tol);
        std::cout << "Z = [[0, 1], [" << k << ", 0]], Phi = transpose\n"
                  << std::setprecision(12) << "rho(|Z^*| |Z|^-1)        = " << r.rho << "   (expected " << k << ")\n"
                  << "<e2, |Z^T| e2>           = " << r.e2_lhs << '\n'
                  << "required constant        = " << r.required_constant << "   (bound sqrt(k) = " << r.bound
                  << ")\n"
                  << "min constant, random V   = " << r.min_constant_random_v << '\n'
                  << "scaled inequality slack  = " << r.scaled_bound.slack << '\n'
                  << (r.pass ? "PASS" : "FAIL") << '\n';
        maybe_write(repro_out, report_to_json(r));
        return r.pass ? 0 : 1;
      }
      CexSearchOptions opts;
      opts.dims = {2};
      const auto r = find_counterexamples_remarks(repro_trials, default_seed(), opts, tol);
      std::cout << std::setprecision(6) << "|Z| <= |X| + |Y| fails:        margin " << r.modulus_bound->margin
                << " at trial " << r.modulus_bound->trial << '\n'
                << "| |Z|^1/2 K^-1/2 | > 1:         margin " << r.half_power->margin << " at trial "
                << r.half_power->trial << '\n'
                << "| Z K^-1 | > 1:                 margin " << r.inverse_product->margin << " at trial "
                << r.inverse_product->trial << ", rho(Z K^-1) = " << r.radius_at_witness << '\n'
                << "bounds held on every sample:    " << (r.bounds_held_everywhere ? "yes" : "no") << '\n';
      maybe_write(repro_out, report_to_json(r));
      return r.bounds_held_everywhere ? 0 : 1;
    }

    if (*findcex) {
      const auto r = find_counterexamples_remarks(cex_trials, cex_seed.value_or(default_seed()), {}, tol);
      std::cout << "trials " << r.trials_run << ", all witnesses found, bounds held everywhere: "
                << (r.bounds_held_everywhere ? "yes" : "no") << '\n';
      maybe_write(cex_out, report_to_json(r));
      return r.bounds_held_everywhere ? 0 : 1;
    }

    if (*mean) {
      const HermMat a = herm_from_json(read_json_file(a_path), tol);
      const HermMat b = herm_from_json(read_json_file(b_path), tol);
      const MeanResult r = geometric_mean_detailed(a, b, tol);
      print_matrix("A # B", r.value.mat());
      if (r.singular_input) std::cout << "singular input: mean computed on the ranges\n";
      maybe_write(mean_out, {{"mean", matrix_to_json(r.value.mat())}, {"singular_input", r.singular_input}});
      return 0;
    }

    if (*polar_cmd) {
      const CMat z = matrix_from_json(read_json_file(z_path));
      const PolarParts p = polar(z, tol);
      print_matrix("U", p.unitary);
      print_matrix("|Z|", p.modulus.mat());
      maybe_write(polar_out, {{"unitary", matrix_to_json(p.unitary)}, {"modulus", matrix_to_json(p.modulus.mat())}});
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return 2;
  }
  return 0;
}
