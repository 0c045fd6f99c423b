// Copyright 2026 The mccov Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mccov/ingest.hpp"

namespace mccov {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_fail(const std::string& field,
                              const std::string& why) {
  throw McError(ErrorKind::SchemaError, "field '" + field + "' " + why);
}

const Json& require(const Json& obj, const char* field,
                    const std::string& ctx) {
  if (!obj.is_object()) schema_fail(ctx, "must be an object");
  auto it = obj.find(field);
  if (it == obj.end()) schema_fail(ctx + "." + field, "is missing");
  return *it;
}

std::string require_string(const Json& obj, const char* field,
                           const std::string& ctx) {
  const Json& v = require(obj, field, ctx);
  if (!v.is_string()) schema_fail(ctx + "." + field, "must be a string");
  return v.get<std::string>();
}

std::int64_t require_count(const Json& obj, const char* field,
                           const std::string& ctx) {
  const Json& v = require(obj, field, ctx);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    schema_fail(ctx + "." + field, "must be an integer");
  }
  if (v.is_number_integer() && v.get<std::int64_t>() < 0) {
    schema_fail(ctx + "." + field, "must be non-negative");
  }
  return v.get<std::int64_t>();
}

CoverageUnit unit_from_loc(const Json& loc, Granularity granularity,
                           const std::string& file, const std::string& ctx) {
  switch (granularity) {
    case Granularity::Line:
      if (!loc.is_number_integer() && !loc.is_number_unsigned()) {
        schema_fail(ctx, "must be an integer line number");
      }
      return line_unit(file, loc.get<std::int64_t>());
    case Granularity::Branch: {
      if (!loc.is_array() || loc.size() != 3) {
        schema_fail(ctx, "must be a [line,block,branch] triple");
      }
      for (const auto& part : loc) {
        if (!part.is_number_integer() && !part.is_number_unsigned()) {
          schema_fail(ctx, "must hold three integers");
        }
      }
      return branch_unit(file, loc[0].get<std::int64_t>(),
                         loc[1].get<std::int64_t>(),
                         loc[2].get<std::int64_t>());
    }
    case Granularity::Function:
      if (!loc.is_string()) schema_fail(ctx, "must be a function name string");
      return function_unit(file, loc.get<std::string>());
    case Granularity::Edge:
      if (!loc.is_number_unsigned() && !loc.is_number_integer()) {
        schema_fail(ctx, "must be an integer edge index");
      }
      if (loc.is_number_integer() && loc.get<std::int64_t>() < 0) {
        schema_fail(ctx, "must be non-negative");
      }
      return edge_unit(loc.get<std::uint64_t>());
  }
  schema_fail(ctx, "has unknown granularity");
}

Json loc_to_json(const CoverageUnit& u) {
  switch (u.granularity()) {
    case Granularity::Line:
      return std::get<std::int64_t>(u.loc);
    case Granularity::Branch: {
      const auto& b = std::get<BranchLoc>(u.loc);
      return Json::array({b.line, b.block, b.branch});
    }
    case Granularity::Function:
      return std::get<std::string>(u.loc);
    case Granularity::Edge:
      return std::get<std::uint64_t>(u.loc);
  }
  return Json();
}

}  // namespace

CoverageMap parse_mccov_json(std::string_view text, Granularity granularity,
                             const IngestOptions& opts) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw McError(ErrorKind::ParseError, e.what());
  }

  if (require_string(doc, "format", "$") != "mccov") {
    schema_fail("$.format", "must be \"mccov\"");
  }
  if (require_count(doc, "version", "$") != 1) {
    schema_fail("$.version", "must be 1");
  }
  Granularity doc_granularity =
      granularity_from_name(require_string(doc, "granularity", "$"));
  if (doc_granularity != granularity) {
    throw McError(ErrorKind::WrongGranularity,
                  std::string("document carries ") +
                      granularity_name(doc_granularity) + " coverage, " +
                      granularity_name(granularity) + " was requested");
  }

  const Json& files = require(doc, "files", "$");
  if (!files.is_array()) schema_fail("$.files", "must be an array");

  // Counts merge across duplicate units, mirroring tracefile semantics.
  std::map<CoverageUnit, std::int64_t> counts;
  std::size_t fi = 0;
  for (const Json& file : files) {
    std::string ctx = "$.files[" + std::to_string(fi++) + "]";
    std::string path =
        normalize_path(require_string(file, "path", ctx), opts.strip_prefix);
    const Json& units = require(file, "units", ctx);
    if (!units.is_array()) schema_fail(ctx + ".units", "must be an array");
    std::size_t ui = 0;
    for (const Json& unit : units) {
      std::string uctx = ctx + ".units[" + std::to_string(ui++) + "]";
      if (!unit.is_object()) schema_fail(uctx, "must be an object");
      const Json& loc = require(unit, "loc", uctx);
      CoverageUnit u = unit_from_loc(loc, granularity, path, uctx + ".loc");
      counts[std::move(u)] += require_count(unit, "count", uctx);
    }
  }

  UnitSet covered;
  UnitSet universe;
  for (const auto& [unit, count] : counts) {
    universe.insert(unit);
    if (count > 0) covered.insert(unit);
  }
  return CoverageMap(granularity, std::move(covered), std::move(universe));
}

std::string emit_mccov_json(const CoverageMap& m) {
  Json doc;
  doc["format"] = "mccov";
  doc["version"] = 1;
  doc["granularity"] = granularity_name(m.granularity());
  doc["files"] = Json::array();

  // The universe is sorted by (file, locator), so one forward pass groups
  // units by file with both files and units already in emission order.
  Json* current = nullptr;
  std::string current_path;
  for (const CoverageUnit& u : m.universe()) {
    if (current == nullptr || u.file != current_path) {
      Json file;
      file["path"] = u.file;
      file["units"] = Json::array();
      doc["files"].push_back(std::move(file));
      current = &doc["files"].back();
      current_path = u.file;
    }
    Json unit;
    unit["loc"] = loc_to_json(u);
    unit["count"] = m.covered().contains(u) ? 1 : 0;
    (*current)["units"].push_back(std::move(unit));
  }
  return doc.dump();
}

}  // namespace mccov
