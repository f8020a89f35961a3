#pragma once

// JSON boundary: surface models, integer matrices, fixture catalogs, and
// suite reports.  Output is deterministic and diffable: fixed key order, no
// timestamps, no machine-specific content.

#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "twistlab/homology.hpp"
#include "twistlab/relations.hpp"
#include "twistlab/surface.hpp"

namespace twistlab {

using Json = nlohmann::ordered_json;

inline Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.rows()) rows.push_back(row);
  return rows;
}

// Crosscap count plus the generator table, each entry with its curve range
// (null for the transposition) and the images of x1..xk as word strings.
inline Json model_to_json(const SurfaceModel& m) {
  Json j;
  j["crosscaps"] = m.crosscaps();
  j["rank"] = m.rank();
  j["boundary"] = m.boundary_word().str();
  Json table = Json::array();
  for (const auto& [name, entry] : m.table()) {
    Json e;
    e["name"] = name;
    if (entry.curve)
      e["curve"] = Json{{"lo", entry.curve->lo}, {"hi", entry.curve->hi}};
    else
      e["curve"] = nullptr;
    Json images = Json::array();
    const FreeMap& f = entry.map.forward();
    for (int g = 1; g <= f.rank(); ++g) images.push_back(f.image(g).str());
    e["images"] = std::move(images);
    table.push_back(std::move(e));
  }
  j["table"] = std::move(table);
  return j;
}

inline Json fixture_to_json(const RelationFixture& f) {
  Json j;
  j["id"] = f.id;
  j["model"] = f.model;
  j["lhs"] = f.lhs;
  j["rhs"] = f.rhs;
  j["kind"] = to_string(f.kind);
  if (f.kind == FixtureKind::CoverMod) j["modulus"] = f.modulus;
  j["provenance"] = f.provenance;
  return j;
}

inline RelationFixture fixture_from_json(const Json& j) {
  RelationFixture f;
  f.id = j.at("id").get<std::string>();
  if (f.id.empty()) throw std::runtime_error("fixture with empty id");
  f.model = j.at("model").get<int>();
  f.lhs = j.at("lhs").get<std::string>();
  f.rhs = j.at("rhs").get<std::string>();
  f.provenance = j.at("provenance").get<std::string>();
  const auto kind = fixture_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw std::runtime_error("fixture " + f.id + ": unknown kind");
  f.kind = *kind;
  if (f.kind == FixtureKind::CoverMod) {
    f.modulus = j.at("modulus").get<long long>();
    if (f.modulus < 2) throw std::runtime_error("fixture " + f.id + ": modulus must be >= 2");
  } else if (j.contains("modulus")) {
    throw std::runtime_error("fixture " + f.id + ": modulus is only valid for kind cover-mod");
  }
  return f;
}

inline Json catalog_to_json(const std::vector<RelationFixture>& fixtures) {
  Json j;
  j["version"] = kCatalogVersion;
  Json arr = Json::array();
  for (const auto& f : fixtures) arr.push_back(fixture_to_json(f));
  j["fixtures"] = std::move(arr);
  return j;
}

inline std::vector<RelationFixture> catalog_from_json(const Json& j) {
  const int version = j.at("version").get<int>();
  if (version != kCatalogVersion)
    throw std::runtime_error("unsupported catalog version " + std::to_string(version) +
                             " (expected " + std::to_string(kCatalogVersion) + ")");
  std::vector<RelationFixture> out;
  for (const auto& jf : j.at("fixtures")) out.push_back(fixture_from_json(jf));
  return out;
}

inline std::vector<RelationFixture> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture catalog: " + path);
  return catalog_from_json(Json::parse(in));
}

inline void save_catalog(const std::string& path, const std::vector<RelationFixture>& fixtures) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write fixture catalog: " + path);
  out << catalog_to_json(fixtures).dump(2) << '\n';
}

// Per-fixture timings are intentionally omitted: JSON reports are meant to be
// byte-identical across runs.
inline Json report_to_json(const SuiteReport& report) {
  Json j;
  j["passed"] = report.passed;
  j["failed"] = report.failed;
  j["overflowed"] = report.overflowed;
  j["all_passed"] = report.all_passed();
  Json results = Json::array();
  for (const auto& r : report.results) {
    Json e;
    e["id"] = r.id;
    e["status"] = to_string(r.status);
    e["detail"] = r.detail;
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);
  return j;
}

}  // namespace twistlab
