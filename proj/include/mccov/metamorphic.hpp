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
//
// Metamorphic coverage. A metamorphic test pair runs the program twice (or
// more) on related inputs; the pair's metamorphic coverage MC(t) is the
// symmetric difference of the two sides' coverage, and a suite's MC(T) is
// the union of its pairs' MC(t). MC isolates the code whose execution
// differs across the relation, which is where a violated relation points.

#ifndef MCCOV_METAMORPHIC_HPP
#define MCCOV_METAMORPHIC_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mccov/coverage.hpp"
#include "mccov/ingest.hpp"

namespace mccov {

// One metamorphic test pair. Each side may hold several coverage maps (a
// relation like "merge the first two inputs" runs the program more than
// once per side); a side's coverage is the union over its maps.
struct TestPair {
  std::string id;
  std::vector<CoverageMap> side_a;
  std::vector<CoverageMap> side_b;
};

// Union-folds one side. Throws EmptySide on an empty list and
// GranularityMismatch on mixed granularities.
CoverageMap side_coverage(const std::vector<CoverageMap>& side);

struct McPairOptions {
  // With strict on, sides whose universes differ raise UniverseMismatch:
  // different universes almost always mean the two sides were collected
  // from different builds. Off, the mismatch is appended to *warnings (when
  // given) and the universes are unioned.
  bool strict = true;
  std::vector<std::string>* warnings = nullptr;
};

// MC(t) = symmetric_difference(side_coverage(side_a), side_coverage(side_b)).
CoverageMap mc_pair(const TestPair& t, const McPairOptions& opts = {});

struct McReportPair {
  std::string id;
  // True |MC(t)|; mc_units holds at most the report cap, so mc_units.size()
  // < mc_size signals truncation.
  std::size_t mc_size = 0;
  std::vector<CoverageUnit> mc_units;
};

struct McReport {
  Granularity granularity = Granularity::Line;
  std::size_t universe_size = 0;
  // Unrounded; rendering rounds to two decimals.
  double mc_percent = 0.0;
  double union_coverage_percent = 0.0;
  UnitSet suite_mc;
  std::vector<McReportPair> pairs;
  // Human-facing notes (non-strict universe mismatches). Not serialized.
  std::vector<std::string> warnings;
};

struct McSuiteOptions {
  bool strict = true;
  // Cap on per-pair unit lists in the report. The suite set is never
  // truncated.
  std::size_t pair_unit_cap = 10000;
};

// MC(T) = union of MC(t) over the suite, with percentages against the full
// instrumented universe (the union of every map's universe) — the same
// denominator ordinary coverage uses, so the two percentages compare.
// Throws EmptySuite on no pairs and propagates pair errors.
McReport mc_suite(const std::vector<TestPair>& pairs,
                  const McSuiteOptions& opts = {});

// Serializes a report:
//   {"format":"mc-report","version":1,"granularity":...,"universe_size":N,
//    "mc_percent":x,"union_coverage_percent":y,"suite_mc":[...],
//    "pairs":[{"id":...,"mc_size":n,"mc_units":[...]}]}
// Units render as {"file":...,"loc":...} with loc shaped as in mccov JSON.
// Percentages are rounded to two decimals here and only here.
std::string emit_mc_report(const McReport& report, bool pretty = false);

// Parses a serialized report back (for downstream analysis commands).
// ParseError on malformed JSON, SchemaError on a bad document.
McReport parse_mc_report(std::string_view text);

// Pair manifest: named pairs of artifact path lists.
//   {"pairs":[{"id":"p1","a":["a1.info",...],"b":["b1.info",...]}]}
struct PairSpec {
  std::string id;
  std::vector<std::string> a_paths;
  std::vector<std::string> b_paths;
};

std::vector<PairSpec> parse_pair_manifest(std::string_view text);

// Loads every artifact named by the manifest at one granularity. Paths are
// resolved relative to `base_dir` when non-empty and the path is relative.
std::vector<TestPair> load_pairs(const std::vector<PairSpec>& specs,
                                 Granularity granularity,
                                 const IngestOptions& ingest,
                                 const std::string& base_dir = {});

}  // namespace mccov

#endif  // MCCOV_METAMORPHIC_HPP
