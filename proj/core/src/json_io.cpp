#include "opineq/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace opineq {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    parse_fail(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json matrix_to_json(const CMat& m) {
  json data = json::array();
  for (const cplx& v : m.data()) data.push_back({v.real(), v.imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMat matrix_from_json(const json& j) {
  return guarded("matrix", [&] {
    if (!j.is_object()) parse_fail("matrix: expected an object");
    const auto rows = j.at("rows").get<std::int64_t>();
    const auto cols = j.at("cols").get<std::int64_t>();
    if (rows < 0 || cols < 0) parse_fail("matrix: negative dimension");
    const json& data = j.at("data");
    if (!data.is_array() || data.size() != static_cast<std::size_t>(rows * cols)) {
      parse_fail("matrix: expected " + std::to_string(rows * cols) + " entries");
    }
    CMat m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    std::size_t idx = 0;
    for (const json& e : data) {
      double re = 0.0;
      double im = 0.0;
      if (e.is_number()) {
        re = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        re = e[0].get<double>();
        im = e[1].get<double>();
      } else {
        parse_fail("matrix: entry " + std::to_string(idx) + " is not [re, im]");
      }
      if (!std::isfinite(re) || !std::isfinite(im)) parse_fail("matrix: non-finite entry " + std::to_string(idx));
      m.data()[idx++] = cplx(re, im);
    }
    return m;
  });
}

HermMat herm_from_json(const json& j, const Tolerance& tol) {
  const CMat m = matrix_from_json(j);
  require_square(m, "hermitian input");
  return HermMat(m, tol.abs);
}

json tolerance_to_json(const Tolerance& t) { return {{"abs", t.abs}, {"rel", t.rel}, {"rank_cutoff", t.rank_cutoff}}; }

Tolerance tolerance_from_json(const json& j, Tolerance base) {
  guarded("tolerance", [&] {
    if (!j.is_object()) parse_fail("tolerance: expected an object");
    if (j.contains("abs")) base.abs = j.at("abs").get<double>();
    if (j.contains("rel")) base.rel = j.at("rel").get<double>();
    if (j.contains("rank_cutoff")) base.rank_cutoff = j.at("rank_cutoff").get<double>();
    return 0;
  });
  if (!base.valid()) throw Error(ErrorKind::InvalidSpec, "tolerances must be positive");
  return base;
}

json posmap_to_json(const PosMap& phi) {
  json params = json::object();
  switch (phi.family()) {
    case MapFamily::Identity:
    case MapFamily::Transpose: params["n"] = phi.in_dim(); break;
    case MapFamily::PartialTrace2x2: params["block_dim"] = phi.out_dim(); break;
    case MapFamily::KrausSum: {
      json ops = json::array();
      for (const auto& k : phi.operators()) ops.push_back(matrix_to_json(k));
      params["operators"] = std::move(ops);
      break;
    }
    case MapFamily::SchurMultiplier: params["s"] = matrix_to_json(phi.operators().front()); break;
    case MapFamily::Congruence: params["k"] = matrix_to_json(phi.operators().front()); break;
    case MapFamily::Sum: {
      json terms = json::array();
      for (const auto& t : phi.children()) terms.push_back(posmap_to_json(t));
      params["terms"] = std::move(terms);
      break;
    }
    case MapFamily::Compose:
      params["outer"] = posmap_to_json(phi.children()[0]);
      params["inner"] = posmap_to_json(phi.children()[1]);
      break;
  }
  return {{"family", to_string(phi.family())},
          {"params", std::move(params)},
          {"in_dim", phi.in_dim()},
          {"out_dim", phi.out_dim()},
          {"class", to_string(phi.declared_class())}};
}

PosMap posmap_from_json(const json& j, const Tolerance& tol) {
  return guarded("map", [&]() -> PosMap {
    if (!j.is_object()) parse_fail("map: expected an object");
    const MapFamily fam = map_family_from_string(j.at("family").get<std::string>());
    const json params = j.value("params", json::object());
    auto dim_param = [&](const char* key) -> std::size_t {
      if (params.contains(key)) return params.at(key).get<std::size_t>();
      if (j.contains("in_dim")) return j.at("in_dim").get<std::size_t>();
      parse_fail(std::string("map: missing ") + key);
    };
    std::optional<PosMap> phi;
    switch (fam) {
      case MapFamily::Identity: phi = PosMap::identity(dim_param("n")); break;
      case MapFamily::Transpose: phi = PosMap::transpose(dim_param("n")); break;
      case MapFamily::PartialTrace2x2: {
        std::size_t b = 0;
        if (params.contains("block_dim")) b = params.at("block_dim").get<std::size_t>();
        else if (j.contains("out_dim")) b = j.at("out_dim").get<std::size_t>();
        else parse_fail("map: missing block_dim");
        phi = PosMap::partial_trace_2x2(b);
        break;
      }
      case MapFamily::KrausSum: {
        std::vector<CMat> ops;
        for (const json& k : params.at("operators")) ops.push_back(matrix_from_json(k));
        phi = PosMap::kraus_sum(std::move(ops));
        break;
      }
      case MapFamily::SchurMultiplier: phi = PosMap::schur_multiplier(herm_from_json(params.at("s"), tol), tol); break;
      case MapFamily::Congruence: phi = PosMap::congruence(matrix_from_json(params.at("k"))); break;
      case MapFamily::Sum: {
        std::vector<PosMap> terms;
        for (const json& t : params.at("terms")) terms.push_back(posmap_from_json(t, tol));
        phi = PosMap::sum(std::move(terms));
        break;
      }
      case MapFamily::Compose:
        phi = PosMap::compose(posmap_from_json(params.at("outer"), tol), posmap_from_json(params.at("inner"), tol));
        break;
    }
    if (j.contains("in_dim") && j.at("in_dim").get<std::size_t>() != phi->in_dim()) {
      throw Error(ErrorKind::DimensionMismatch, "map: in_dim does not match its parameters");
    }
    if (j.contains("out_dim") && j.at("out_dim").get<std::size_t>() != phi->out_dim()) {
      throw Error(ErrorKind::DimensionMismatch, "map: out_dim does not match its parameters");
    }
    if (j.contains("class")) {
      const PositivityClass c = positivity_class_from_string(j.at("class").get<std::string>());
      if (c != phi->declared_class()) phi = phi->with_declared_class(c);
    }
    return *phi;
  });
}

json funpair_to_json(const FunPair& fp) {
  json j = {{"kind", to_string(fp.kind)}};
  if (fp.kind == FunPairKind::Power) j["p"] = fp.param;
  if (fp.kind == FunPairKind::Scaled) j["rho"] = fp.param;
  return j;
}

FunPair funpair_from_json(const json& j) {
  return guarded("funpair", [&] {
    if (j.is_string()) {
      const FunPairKind k = funpair_kind_from_string(j.get<std::string>());
      if (k == FunPairKind::Range) return FunPair::range();
      if (k == FunPairKind::Power) return FunPair::power(0.0);
      parse_fail("funpair: scaled needs rho");
    }
    const FunPairKind k = funpair_kind_from_string(j.at("kind").get<std::string>());
    switch (k) {
      case FunPairKind::Power: return FunPair::power(j.value("p", 0.0));
      case FunPairKind::Range: return FunPair::range();
      case FunPairKind::Scaled: return FunPair::scaled(j.at("rho").get<double>());
    }
    parse_fail("funpair: unknown kind");
  });
}

json certificate_to_json(const Certificate& c, json inputs) {
  inputs["digest"] = c.inputs_digest;
  json aux = json::array();
  for (const auto& a : c.aux) aux.push_back({{"name", a.name}, {"slack", a.slack}, {"pass", a.pass}});
  return {{"check_id", c.check_id},
          {"pass", c.pass},
          {"slack", c.slack},
          {"witness_V", c.witness_v ? matrix_to_json(*c.witness_v) : json(nullptr)},
          {"used_singular_mean_limit", c.used_singular_mean_limit},
          {"inputs", std::move(inputs)},
          {"notes", c.notes},
          {"tolerances", tolerance_to_json(c.tolerances)},
          {"lhs", matrix_to_json(c.lhs.mat())},
          {"rhs", matrix_to_json(c.rhs.mat())},
          {"aux", std::move(aux)}};
}

json report_to_json(const MajorizationReport& r) {
  json j = {{"k_products_lhs", r.k_products_lhs},
            {"k_products_rhs", r.k_products_rhs},
            {"pass", r.pass},
            {"worst_ratio", r.worst_ratio}};
  j["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
  return j;
}

json report_to_json(const GapReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"j", e.j}, {"k", e.k}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"pass", e.pass}});
  }
  return {{"entries", std::move(entries)}, {"pass", r.pass}, {"min_slack", r.min_slack}};
}

json report_to_json(const ReverseProductReport& r) {
  return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"pass", r.pass}, {"worst_ratio", r.worst_ratio}};
}

json report_to_json(const CartesianReport& r) {
  return {{"mean_bound", certificate_to_json(r.mean_bound)},
          {"majorization", report_to_json(r.majorization)},
          {"congruence_norm", r.congruence_norm},
          {"congruence_pass", r.congruence_pass},
          {"radius", r.radius},
          {"radius_pass", r.radius_pass},
          {"embedding_residual", r.embedding_residual},
          {"singular_sum", r.singular_sum},
          {"pass", r.pass}};
}

json report_to_json(const TransposeSumReport& r) {
  json j = {{"det_lhs", r.det_lhs},
            {"det_rhs", r.det_rhs},
            {"lhs_rel_error", r.lhs_rel_error},
            {"rhs_max_rel_error", r.rhs_max_rel_error},
            {"det_identity_residual", r.det_identity_residual},
            {"split_fails_for_all_draws", r.split_fails_for_all_draws},
            {"refused_by_two_positive_check", r.refused_by_two_positive_check},
            {"draws", r.draws},
            {"pass", r.pass}};
  if (r.level2_witness) {
    j["level2_witness"] = {{"input", matrix_to_json(r.level2_witness->input)},
                           {"min_eigenvalue", r.level2_witness->min_eigenvalue},
                           {"trial", r.level2_witness->trial}};
  } else {
    j["level2_witness"] = nullptr;
  }
  return j;
}

json report_to_json(const SharpnessReport& r) {
  return {{"k", r.k},
          {"rho", r.rho},
          {"e2_lhs", r.e2_lhs},
          {"e2_mean", r.e2_mean},
          {"required_constant", r.required_constant},
          {"bound", r.bound},
          {"min_constant_random_v", r.min_constant_random_v},
          {"scaled_bound", certificate_to_json(r.scaled_bound)},
          {"pass", r.pass}};
}

json report_to_json(const CexSearchReport& r) {
  auto w = [](const std::optional<CexWitness>& x) -> json {
    if (!x) return nullptr;
    return {{"z", matrix_to_json(x->z)}, {"margin", x->margin}, {"trial", x->trial}};
  };
  return {{"modulus_bound", w(r.modulus_bound)},
          {"half_power", w(r.half_power)},
          {"inverse_product", w(r.inverse_product)},
          {"radius_at_witness", r.radius_at_witness},
          {"trials_run", r.trials_run},
          {"bounds_held_everywhere", r.bounds_held_everywhere},
          {"bound_failures", r.bound_failures},
          {"max_radius", r.max_radius},
          {"max_congruence_norm", r.max_congruence_norm}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidSpec, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace opineq
