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

#include "mccov/metamorphic.hpp"

#include <cmath>
#include <cstdint>
#include <utility>

#include "json.hpp"

namespace mccov {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_fail(const std::string& field,
                              const std::string& why) {
  throw McError(ErrorKind::SchemaError, "field '" + field + "' " + why);
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

Json unit_to_json(const CoverageUnit& u) {
  Json out;
  out["file"] = u.file;
  switch (u.granularity()) {
    case Granularity::Line:
      out["loc"] = std::get<std::int64_t>(u.loc);
      break;
    case Granularity::Branch: {
      const auto& b = std::get<BranchLoc>(u.loc);
      out["loc"] = Json::array({b.line, b.block, b.branch});
      break;
    }
    case Granularity::Function:
      out["loc"] = std::get<std::string>(u.loc);
      break;
    case Granularity::Edge:
      out["loc"] = std::get<std::uint64_t>(u.loc);
      break;
  }
  return out;
}

CoverageUnit unit_from_json(const Json& j, Granularity granularity,
                            const std::string& ctx) {
  if (!j.is_object()) schema_fail(ctx, "must be an object");
  auto file_it = j.find("file");
  auto loc_it = j.find("loc");
  if (file_it == j.end() || !file_it->is_string()) {
    schema_fail(ctx + ".file", "must be a string");
  }
  if (loc_it == j.end()) schema_fail(ctx + ".loc", "is missing");
  std::string file = file_it->get<std::string>();
  const Json& loc = *loc_it;
  switch (granularity) {
    case Granularity::Line:
      if (!loc.is_number_integer() && !loc.is_number_unsigned()) {
        schema_fail(ctx + ".loc", "must be an integer");
      }
      return line_unit(std::move(file), loc.get<std::int64_t>());
    case Granularity::Branch:
      if (!loc.is_array() || loc.size() != 3) {
        schema_fail(ctx + ".loc", "must be a [line,block,branch] triple");
      }
      return branch_unit(std::move(file), loc[0].get<std::int64_t>(),
                         loc[1].get<std::int64_t>(),
                         loc[2].get<std::int64_t>());
    case Granularity::Function:
      if (!loc.is_string()) schema_fail(ctx + ".loc", "must be a string");
      return function_unit(std::move(file), loc.get<std::string>());
    case Granularity::Edge:
      if (!loc.is_number_integer() && !loc.is_number_unsigned()) {
        schema_fail(ctx + ".loc", "must be an integer");
      }
      return edge_unit(loc.get<std::uint64_t>());
  }
  schema_fail(ctx, "has unknown granularity");
}

}  // namespace

CoverageMap side_coverage(const std::vector<CoverageMap>& side) {
  if (side.empty()) {
    throw McError(ErrorKind::EmptySide,
                  "a pair side must hold at least one coverage map");
  }
  CoverageMap acc = side.front();
  for (std::size_t i = 1; i < side.size(); ++i) acc = unite(acc, side[i]);
  return acc;
}

CoverageMap mc_pair(const TestPair& t, const McPairOptions& opts) {
  CoverageMap a = side_coverage(t.side_a);
  CoverageMap b = side_coverage(t.side_b);
  if (a.universe() != b.universe()) {
    std::string msg = "pair '" + t.id + "': side universes differ (" +
                      std::to_string(a.universe().size()) + " vs " +
                      std::to_string(b.universe().size()) +
                      " units); the sides look like different builds";
    if (opts.strict) throw McError(ErrorKind::UniverseMismatch, msg);
    if (opts.warnings) opts.warnings->push_back(msg + "; unioning universes");
  }
  return symmetric_difference(a, b);
}

McReport mc_suite(const std::vector<TestPair>& pairs,
                  const McSuiteOptions& opts) {
  if (pairs.empty()) {
    throw McError(ErrorKind::EmptySuite, "a suite must hold at least one pair");
  }

  McReport report;
  McPairOptions pair_opts;
  pair_opts.strict = opts.strict;
  pair_opts.warnings = &report.warnings;

  CoverageMap suite_mc = mc_pair(pairs.front(), pair_opts);
  report.granularity = suite_mc.granularity();
  CoverageMap all_covered = unite(side_coverage(pairs.front().side_a),
                                  side_coverage(pairs.front().side_b));

  auto append_pair = [&](const TestPair& t, const CoverageMap& mc) {
    McReportPair entry;
    entry.id = t.id;
    entry.mc_size = mc.covered().size();
    for (const CoverageUnit& u : mc.covered()) {
      if (entry.mc_units.size() >= opts.pair_unit_cap) break;
      entry.mc_units.push_back(u);
    }
    report.pairs.push_back(std::move(entry));
  };
  append_pair(pairs.front(), suite_mc);

  for (std::size_t i = 1; i < pairs.size(); ++i) {
    CoverageMap mc = mc_pair(pairs[i], pair_opts);
    append_pair(pairs[i], mc);
    suite_mc = unite(suite_mc, mc);
    all_covered = unite(all_covered, unite(side_coverage(pairs[i].side_a),
                                           side_coverage(pairs[i].side_b)));
  }

  report.suite_mc = suite_mc.covered();
  report.universe_size = suite_mc.universe().size();
  // Both percentages share the full-universe denominator, so the report's
  // MC% reads side by side with its ordinary coverage%.
  report.mc_percent = coverage_percent(suite_mc);
  report.union_coverage_percent = coverage_percent(all_covered);
  return report;
}

std::string emit_mc_report(const McReport& report, bool pretty) {
  Json doc;
  doc["format"] = "mc-report";
  doc["version"] = 1;
  doc["granularity"] = granularity_name(report.granularity);
  doc["universe_size"] = report.universe_size;
  doc["mc_percent"] = round2(report.mc_percent);
  doc["union_coverage_percent"] = round2(report.union_coverage_percent);
  doc["suite_mc"] = Json::array();
  for (const CoverageUnit& u : report.suite_mc) {
    doc["suite_mc"].push_back(unit_to_json(u));
  }
  doc["pairs"] = Json::array();
  for (const McReportPair& p : report.pairs) {
    Json entry;
    entry["id"] = p.id;
    entry["mc_size"] = p.mc_size;
    entry["mc_units"] = Json::array();
    for (const CoverageUnit& u : p.mc_units) {
      entry["mc_units"].push_back(unit_to_json(u));
    }
    doc["pairs"].push_back(std::move(entry));
  }
  return pretty ? doc.dump(2) : doc.dump();
}

McReport parse_mc_report(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw McError(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object()) schema_fail("$", "must be an object");
  auto str = [&](const char* f) {
    auto it = doc.find(f);
    if (it == doc.end() || !it->is_string()) {
      schema_fail(std::string("$.") + f, "must be a string");
    }
    return it->get<std::string>();
  };
  if (str("format") != "mc-report") schema_fail("$.format", "must be \"mc-report\"");
  auto version = doc.find("version");
  if (version == doc.end() || !version->is_number_integer() ||
      version->get<std::int64_t>() != 1) {
    schema_fail("$.version", "must be 1");
  }

  McReport report;
  report.granularity = granularity_from_name(str("granularity"));
  auto num = [&](const char* f) -> double {
    auto it = doc.find(f);
    if (it == doc.end() || !it->is_number()) {
      schema_fail(std::string("$.") + f, "must be a number");
    }
    return it->get<double>();
  };
  report.universe_size = static_cast<std::size_t>(num("universe_size"));
  report.mc_percent = num("mc_percent");
  report.union_coverage_percent = num("union_coverage_percent");

  auto suite = doc.find("suite_mc");
  if (suite == doc.end() || !suite->is_array()) {
    schema_fail("$.suite_mc", "must be an array");
  }
  std::size_t i = 0;
  for (const Json& u : *suite) {
    report.suite_mc.insert(unit_from_json(
        u, report.granularity, "$.suite_mc[" + std::to_string(i++) + "]"));
  }

  auto pairs = doc.find("pairs");
  if (pairs == doc.end() || !pairs->is_array()) {
    schema_fail("$.pairs", "must be an array");
  }
  std::size_t pi = 0;
  for (const Json& p : *pairs) {
    std::string ctx = "$.pairs[" + std::to_string(pi++) + "]";
    if (!p.is_object()) schema_fail(ctx, "must be an object");
    McReportPair entry;
    auto id = p.find("id");
    if (id == p.end() || !id->is_string()) schema_fail(ctx + ".id", "must be a string");
    entry.id = id->get<std::string>();
    auto size = p.find("mc_size");
    if (size == p.end() || !size->is_number_integer()) {
      schema_fail(ctx + ".mc_size", "must be an integer");
    }
    entry.mc_size = size->get<std::size_t>();
    auto units = p.find("mc_units");
    if (units == p.end() || !units->is_array()) {
      schema_fail(ctx + ".mc_units", "must be an array");
    }
    std::size_t ui = 0;
    for (const Json& u : *units) {
      entry.mc_units.push_back(unit_from_json(
          u, report.granularity,
          ctx + ".mc_units[" + std::to_string(ui++) + "]"));
    }
    report.pairs.push_back(std::move(entry));
  }
  return report;
}

std::vector<PairSpec> parse_pair_manifest(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw McError(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object()) schema_fail("$", "must be an object");
  auto pairs = doc.find("pairs");
  if (pairs == doc.end() || !pairs->is_array()) {
    schema_fail("$.pairs", "must be an array");
  }

  std::vector<PairSpec> specs;
  std::size_t pi = 0;
  for (const Json& p : *pairs) {
    std::string ctx = "$.pairs[" + std::to_string(pi++) + "]";
    if (!p.is_object()) schema_fail(ctx, "must be an object");
    PairSpec spec;
    auto id = p.find("id");
    if (id == p.end() || !id->is_string()) {
      schema_fail(ctx + ".id", "must be a string");
    }
    spec.id = id->get<std::string>();
    auto side = [&](const char* name, std::vector<std::string>* out) {
      auto it = p.find(name);
      if (it == p.end() || !it->is_array() || it->empty()) {
        schema_fail(ctx + "." + name, "must be a non-empty array of paths");
      }
      for (const Json& path : *it) {
        if (!path.is_string()) {
          schema_fail(ctx + "." + name, "must hold strings");
        }
        out->push_back(path.get<std::string>());
      }
    };
    side("a", &spec.a_paths);
    side("b", &spec.b_paths);
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<TestPair> load_pairs(const std::vector<PairSpec>& specs,
                                 Granularity granularity,
                                 const IngestOptions& ingest,
                                 const std::string& base_dir) {
  auto resolve = [&](const std::string& path) {
    if (base_dir.empty() || path.starts_with('/')) return path;
    return base_dir + "/" + path;
  };
  std::vector<TestPair> pairs;
  for (const PairSpec& spec : specs) {
    TestPair pair;
    pair.id = spec.id;
    for (const std::string& p : spec.a_paths) {
      pair.side_a.push_back(load_coverage(resolve(p), granularity, ingest));
    }
    for (const std::string& p : spec.b_paths) {
      pair.side_b.push_back(load_coverage(resolve(p), granularity, ingest));
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace mccov
