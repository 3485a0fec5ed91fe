#include <gtest/gtest.h>

#include <filesystem>
#include <limits>

#include "opineq/generators.hpp"
#include "opineq/instances.hpp"
#include "opineq/json_io.hpp"
#include "test_util.hpp"

using namespace opineq;
using namespace opineq::testing;

namespace {

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(MatrixJson, RoundTrip) {
  Rng rng(1);
  const CMat m = ginibre(3, 2, rng);
  const json j = matrix_to_json(m);
  EXPECT_EQ(j.at("rows"), 3);
  EXPECT_EQ(j.at("cols"), 2);
  EXPECT_EQ(j.at("data").size(), 6u);
  EXPECT_EQ(matrix_from_json(j), m);
  EXPECT_EQ(matrix_from_json(json::parse(j.dump())), m);
}

TEST(MatrixJson, PlainNumbersAreReal) {
  const json j = {{"rows", 2}, {"cols", 2}, {"data", {0, 4, 1, 0}}};
  EXPECT_EQ(matrix_from_json(j), (CMat{{0.0, 4.0}, {1.0, 0.0}}));
}

TEST(MatrixJson, Rejections) {
  expect_error(ErrorKind::ParseError,
               [] { (void)matrix_from_json({{"rows", 2}, {"cols", 2}, {"data", {1, 2, 3}}}); });
  expect_error(ErrorKind::ParseError, [] { (void)matrix_from_json({{"rows", 1}, {"cols", 1}}); });
  expect_error(ErrorKind::ParseError, [] {
    json j = {{"rows", 1}, {"cols", 1}};
    j["data"] = json::array({json::array({std::numeric_limits<double>::infinity(), 0.0})});
    (void)matrix_from_json(j);
  });
  expect_error(ErrorKind::ParseError,
               [] { (void)matrix_from_json({{"rows", 1}, {"cols", 1}, {"data", {"x"}}}); });
  expect_error(ErrorKind::NonHermitian,
               [] { (void)herm_from_json({{"rows", 2}, {"cols", 2}, {"data", {0, 1, 0, 0}}}); });
}

TEST(ToleranceJson, Overrides) {
  const Tolerance t = tolerance_from_json({{"abs", 1e-6}});
  EXPECT_EQ(t.abs, 1e-6);
  EXPECT_EQ(t.rel, Tolerance{}.rel);
  const Tolerance r = tolerance_from_json(tolerance_to_json(Tolerance{1e-3, 1e-4, 1e-5}));
  EXPECT_EQ(r.abs, 1e-3);
  EXPECT_EQ(r.rel, 1e-4);
  EXPECT_EQ(r.rank_cutoff, 1e-5);
  expect_error(ErrorKind::InvalidSpec, [] { (void)tolerance_from_json({{"rel", -1.0}}); });
}

TEST(PosMapJson, RoundTripEveryFamily) {
  Rng rng(2);
  for (const auto& fam : known_map_families()) {
    const PosMap phi = random_map(fam, 3, 2, rng);
    const json j = posmap_to_json(phi);
    EXPECT_TRUE(j.contains("family"));
    EXPECT_TRUE(j.contains("params"));
    EXPECT_EQ(j.at("in_dim"), phi.in_dim());
    EXPECT_EQ(j.at("out_dim"), phi.out_dim());
    const PosMap back = posmap_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.family(), phi.family()) << fam;
    EXPECT_EQ(back.declared_class(), phi.declared_class()) << fam;
    const CMat x = ginibre(phi.in_dim(), phi.in_dim(), rng);
    EXPECT_LE(max_diff(back.apply(x), phi.apply(x)), 1e-13) << fam;
  }
}

TEST(PosMapJson, ClassAndDimensionValidation) {
  json j = posmap_to_json(PosMap::transpose(2));
  j["class"] = "completely_positive";
  expect_error(ErrorKind::ClassViolation, [&] { (void)posmap_from_json(j); });
  json k = posmap_to_json(PosMap::identity(2));
  k["out_dim"] = 3;
  expect_error(ErrorKind::DimensionMismatch, [&] { (void)posmap_from_json(k); });
  expect_error(ErrorKind::ParseError, [] { (void)posmap_from_json({{"family", "mystery"}}); });
  json w = posmap_to_json(PosMap::identity(2));
  w["class"] = "two_positive";
  EXPECT_EQ(posmap_from_json(w).declared_class(), PositivityClass::TwoPositive);
}

TEST(FunPairJson, Forms) {
  EXPECT_EQ(funpair_from_json("range").kind, FunPairKind::Range);
  const FunPair p = funpair_from_json({{"kind", "power"}, {"p", 0.5}});
  EXPECT_EQ(p.kind, FunPairKind::Power);
  EXPECT_EQ(p.param, 0.5);
  const FunPair s = funpair_from_json(funpair_to_json(FunPair::scaled(3.0)));
  EXPECT_EQ(s.kind, FunPairKind::Scaled);
  EXPECT_EQ(s.param, 3.0);
  expect_error(ErrorKind::ParseError, [] { (void)funpair_from_json("cubic"); });
}

TEST(CertificateJson, Fields) {
  const CMat z{{0.0, 4.0}, {1.0, 0.0}};
  const PosMap phi = PosMap::sum({PosMap::identity(2), PosMap::transpose(2)});
  const Certificate c = check_geometric_domination(phi, z, kato_supremum(z), FunPair::power(0));
  const json j = certificate_to_json(c, {{"note", "x"}});
  for (const char* key : {"check_id", "pass", "slack", "witness_V", "used_singular_mean_limit", "inputs", "notes",
                          "tolerances", "lhs", "rhs", "aux"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("inputs").at("note"), "x");
  EXPECT_EQ(j.at("inputs").at("digest"), c.inputs_digest);
  EXPECT_EQ(matrix_from_json(j.at("witness_V")), *c.witness_v);
}

TEST(InstanceJson, RoundTripAndRun) {
  Rng rng(3);
  for (const auto& id : known_check_ids()) {
    InstanceRequest req;
    req.check_id = id;
    req.n = 3;
    req.m = 3;
    req.family = id == "check_schur_gaps" || id == "check_schur_remark" ? "schur_multiplier" : "kraus_sum";
    const Instance inst = generate_instance(req, rng).instance;
    const json j = instance_to_json(inst);
    const Instance back = instance_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.check_id, inst.check_id);
    EXPECT_EQ(back.z, inst.z);
    EXPECT_EQ(back.j.has_value(), inst.j.has_value());
    const CheckOutcome a = run_check(inst);
    const CheckOutcome b = run_check(back);
    EXPECT_EQ(a.cert.slack, b.cert.slack) << id;
    EXPECT_EQ(a.cert.pass, b.cert.pass) << id;
    EXPECT_TRUE(a.cert.pass) << id;
  }
}

TEST(JsonFile, WriteCreatesDirectoriesAndReadsBack) {
  const auto dir = std::filesystem::temp_directory_path() / "opineq_json_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "nested" / "x.json";
  write_json_file(path, {{"a", 1}});
  EXPECT_EQ(read_json_file(path).at("a"), 1);
  std::filesystem::remove_all(dir);
  expect_error(ErrorKind::ParseError, [&] { (void)read_json_file(path); });
}
