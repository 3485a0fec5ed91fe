#include "opineq/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "opineq/decompose.hpp"
#include "opineq/generators.hpp"

namespace opineq {

std::vector<std::string> default_families(const std::string& check_id) {
  if (check_id == "check_two_positive_split") {
    return {"identity", "partial_trace_2x2", "kraus_sum", "schur_multiplier", "congruence", "compose"};
  }
  if (check_id == "check_schur_gaps" || check_id == "check_schur_remark") return {"schur_multiplier"};
  return known_map_families();
}

json campaign_spec_to_json(const CampaignSpec& s) {
  json kinds = json::array();
  for (auto k : s.funpair_kinds) kinds.push_back(to_string(k));
  return {{"check_id", s.check_id},
          {"n", s.n},
          {"m", s.m},
          {"trials", s.trials},
          {"seed", s.seed},
          {"map_families", s.map_families},
          {"funpair_kinds", std::move(kinds)},
          {"p_values", s.p_values},
          {"tolerances", tolerance_to_json(s.tolerances)},
          {"output_path", s.output_path},
          {"probe_random_v", s.probe_random_v}};
}

void validate(const CampaignSpec& s) {
  const auto& ids = known_check_ids();
  if (std::find(ids.begin(), ids.end(), s.check_id) == ids.end()) {
    throw Error(ErrorKind::InvalidSpec, "unknown check id '" + s.check_id + "'");
  }
  if (s.trials == 0) throw Error(ErrorKind::InvalidSpec, "trials must be >= 1");
  if (s.n.empty() || s.m.empty()) throw Error(ErrorKind::InvalidSpec, "dimension lists must be non-empty");
  for (auto d : s.n)
    if (d == 0) throw Error(ErrorKind::InvalidSpec, "dimensions must be >= 1");
  for (auto d : s.m)
    if (d == 0) throw Error(ErrorKind::InvalidSpec, "dimensions must be >= 1");
  const auto& fams = known_map_families();
  for (const auto& f : s.map_families) {
    if (std::find(fams.begin(), fams.end(), f) == fams.end()) {
      throw Error(ErrorKind::InvalidSpec, "unknown map family '" + f + "'");
    }
  }
  if (!s.tolerances.valid()) throw Error(ErrorKind::InvalidSpec, "tolerances must be positive");
  if (s.threads == 0) throw Error(ErrorKind::InvalidSpec, "threads must be >= 1");
}

CampaignSpec campaign_spec_from_json(const json& j) {
  CampaignSpec s;
  try {
    s.check_id = j.at("check_id").get<std::string>();
    if (j.contains("n")) s.n = j.at("n").get<std::vector<std::size_t>>();
    if (j.contains("m")) s.m = j.at("m").get<std::vector<std::size_t>>();
    if (j.contains("trials")) {
      const auto t = j.at("trials").get<std::int64_t>();
      if (t < 0) throw Error(ErrorKind::InvalidSpec, "trials must be >= 1");
      s.trials = static_cast<std::size_t>(t);
    }
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("map_families")) s.map_families = j.at("map_families").get<std::vector<std::string>>();
    if (j.contains("funpair_kinds")) {
      for (const auto& k : j.at("funpair_kinds")) s.funpair_kinds.push_back(funpair_kind_from_string(k.get<std::string>()));
    }
    if (j.contains("p_values")) s.p_values = j.at("p_values").get<std::vector<double>>();
    if (j.contains("tolerances")) s.tolerances = tolerance_from_json(j.at("tolerances"));
    if (j.contains("output_path")) s.output_path = j.at("output_path").get<std::string>();
    if (j.contains("threads")) s.threads = j.at("threads").get<std::size_t>();
    if (j.contains("probe_random_v")) s.probe_random_v = j.at("probe_random_v").get<bool>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidSpec, std::string("campaign spec: ") + e.what());
  }
  validate(s);
  return s;
}

namespace {

struct TrialResult {
  bool done = false;
  bool pass = false;
  bool aux_pass = true;
  bool near_miss = false;
  bool singular_mean = false;
  bool random_v_run = false;
  bool random_v_fail = false;
  double slack = 0.0;
  std::size_t resamples = 0;
  std::string error;
  json certificate;
  json instance;
};

std::uint64_t stream_of(const std::string& id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool is_geometric(const std::string& id) {
  return id == "check_geometric_domination" || id == "check_normal_corollary" ||
         id == "check_contraction_corollary" || id == "check_range_corollary" ||
         id == "check_spectral_radius_corollary" || id == "check_semi_hyponormal_corollary";
}

TrialResult run_trial(const CampaignSpec& spec, const std::vector<std::string>& families, std::size_t index) {
  TrialResult r;
  r.done = true;
  Rng rng(derive_seed(spec.seed, stream_of(spec.check_id), index));
  InstanceRequest req;
  req.check_id = spec.check_id;
  req.n = spec.n[rng.index(spec.n.size())];
  req.m = spec.m[rng.index(spec.m.size())];
  req.family = families[rng.index(families.size())];
  static const std::vector<FunPairKind> all_kinds = {FunPairKind::Power, FunPairKind::Range, FunPairKind::Scaled};
  const auto& kinds = spec.funpair_kinds.empty() ? all_kinds : spec.funpair_kinds;
  req.kind = kinds[rng.index(kinds.size())];
  static const std::vector<double> default_p = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const auto& ps = spec.p_values.empty() ? default_p : spec.p_values;
  req.p = ps[rng.index(ps.size())];

  json inputs = {{"trial", index}, {"n", req.n}, {"m", req.m}, {"map_family", req.family}};
  const Tolerance& tol = spec.tolerances;
  try {
    const GeneratedInstance gen = generate_instance(req, rng, tol);
    r.resamples = gen.resamples;
    const Instance& inst = gen.instance;
    if (inst.funpair) inputs["funpair"] = funpair_to_json(*inst.funpair);
    if (spec.check_id == "check_two_positive_split") inputs["p"] = inst.p;

    const CheckOutcome out = run_check(inst, tol);
    const Certificate& c = out.cert;
    r.pass = c.pass;
    r.aux_pass = c.all_pass() || !c.pass;
    r.slack = c.slack;
    r.singular_mean = c.used_singular_mean_limit;
    if (c.pass && c.slack < 0.0) r.near_miss = true;
    r.certificate = certificate_to_json(c, inputs);
    r.certificate.erase("lhs");
    r.certificate.erase("rhs");
    if (!out.report.is_null()) r.certificate["report"] = out.report;
    if (!c.pass) r.instance = instance_to_json(inst);

    if (spec.probe_random_v && is_geometric(spec.check_id) && inst.j) {
      const CMat v = haar_unitary(inst.map.out_dim(), rng);
      r.random_v_run = true;
      r.random_v_fail = !geometric_domination_for(inst.map, inst.z, *inst.j, v, tol).pass;
    } else if (spec.probe_random_v && is_geometric(spec.check_id)) {
      // Corollary forms build J internally; rebuild it for the probe.
      HermMat j;
      if (spec.check_id == "check_normal_corollary" || spec.check_id == "check_semi_hyponormal_corollary") {
        j = modulus(inst.z, tol);
      } else if (spec.check_id == "check_contraction_corollary") {
        j = HermMat::identity(inst.z.rows());
      } else {
        j = modulus(inst.z, tol) * std::sqrt(modulus_ratio_radius(inst.z, tol));
      }
      const CMat v = haar_unitary(inst.map.out_dim(), rng);
      r.random_v_run = true;
      r.random_v_fail = !geometric_domination_for(inst.map, inst.z, j, v, tol).pass;
    }
  } catch (const Error& e) {
    r.pass = false;
    r.error = std::string(to_string(e.kind())) + ": " + e.what();
    r.certificate = {{"check_id", spec.check_id}, {"pass", false}, {"error", r.error}, {"inputs", inputs}};
  }
  return r;
}

}  // namespace

CampaignResult run_campaign(const CampaignSpec& spec) {
  validate(spec);
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> families = spec.map_families.empty() ? default_families(spec.check_id)
                                                                      : spec.map_families;
  std::vector<TrialResult> results(spec.trials);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_fail{std::numeric_limits<std::size_t>::max()};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= spec.trials || i > first_fail.load()) return;
      results[i] = run_trial(spec, families, i);
      if (!results[i].pass) {
        std::size_t cur = first_fail.load();
        while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  const std::size_t nthreads = std::min(spec.threads, spec.trials);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CampaignSummary s;
  s.trials = spec.trials;
  s.seed = spec.seed;
  s.min_slack = std::numeric_limits<double>::infinity();
  const std::size_t last = std::min(first_fail.load(), spec.trials - 1);
  json certs = json::array();
  for (std::size_t i = 0; i <= last; ++i) {
    const TrialResult& r = results[i];
    ++s.completed;
    if (!r.pass) {
      ++s.failures;
      s.first_failure = i;
      s.first_failure_reason = r.error.empty() ? "slack " + std::to_string(r.slack) : r.error;
    }
    if (!r.aux_pass) ++s.aux_failures;
    if (r.near_miss) ++s.near_misses;
    if (r.singular_mean) ++s.singular_mean;
    if (r.random_v_run) ++s.random_v_trials;
    if (r.random_v_fail) ++s.random_v_failures;
    s.resamples += r.resamples;
    if (r.error.empty()) s.min_slack = std::min(s.min_slack, r.slack);
    certs.push_back(r.certificate);
  }
  if (!std::isfinite(s.min_slack)) s.min_slack = 0.0;

  json summary = {{"trials", s.trials},
                  {"completed", s.completed},
                  {"failures", s.failures},
                  {"min_slack", s.min_slack},
                  {"seed", s.seed},
                  {"aux_failures", s.aux_failures},
                  {"near_misses", s.near_misses},
                  {"resamples", s.resamples},
                  {"singular_mean", s.singular_mean},
                  {"random_v_trials", s.random_v_trials},
                  {"random_v_failures", s.random_v_failures}};
  json report = {{"spec", campaign_spec_to_json(spec)}, {"certificates", std::move(certs)}, {"summary", summary}};
  if (s.first_failure) {
    report["summary"]["first_failure"] = *s.first_failure;
    report["summary"]["first_failure_reason"] = s.first_failure_reason;
    report["failed_instance"] = results[*s.first_failure].instance;
  }
  if (!spec.output_path.empty()) write_json_file(spec.output_path, report);

  CampaignResult out;
  out.summary = s;
  out.report = std::move(report);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace opineq
