#pragma once

// JSON forms of matrices, maps, tolerances, certificates and reports.
//
// Matrix: {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
// Map:    {"family": ..., "params": {...}, "in_dim": n, "out_dim": m, "class": ...}

#include <filesystem>

#include <nlohmann/json.hpp>

#include "opineq/checks.hpp"
#include "opineq/reproductions.hpp"

namespace opineq {

using json = nlohmann::json;

json matrix_to_json(const CMat& m);
/// ParseError on bad shape, entry count or non-finite entries.
CMat matrix_from_json(const json& j);
HermMat herm_from_json(const json& j, const Tolerance& tol = {});

json tolerance_to_json(const Tolerance& t);
/// Fields present in `j` override `base`; InvalidSpec if the result is not
/// strictly positive.
Tolerance tolerance_from_json(const json& j, Tolerance base = {});

json posmap_to_json(const PosMap& phi);
PosMap posmap_from_json(const json& j, const Tolerance& tol = {});

json funpair_to_json(const FunPair& fp);
FunPair funpair_from_json(const json& j);

/// Certificate JSON. `inputs` is stored verbatim; the digest is added to it.
json certificate_to_json(const Certificate& c, json inputs = json::object());

json report_to_json(const MajorizationReport& r);
json report_to_json(const GapReport& r);
json report_to_json(const ReverseProductReport& r);
json report_to_json(const CartesianReport& r);
json report_to_json(const TransposeSumReport& r);
json report_to_json(const SharpnessReport& r);
json report_to_json(const CexSearchReport& r);

json read_json_file(const std::filesystem::path& path);
/// Two-space indented, trailing newline.
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace opineq
