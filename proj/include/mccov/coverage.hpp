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
// Value types for code coverage and the set algebra on them. A CoverageMap
// is an immutable pair of unit sets (covered, universe) at one granularity;
// union, intersection, and symmetric difference combine maps of the same
// granularity. Differential coverage of a test pair is
// symmetric_difference(cov_a, cov_b).

#ifndef MCCOV_COVERAGE_HPP
#define MCCOV_COVERAGE_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "mccov/errors.hpp"

namespace mccov {

enum class Granularity { Line, Branch, Function, Edge };

const char* granularity_name(Granularity g);
Granularity granularity_from_name(std::string_view name);

// Branch locator: a (line, block, branch) triple, following the shape of
// branch records in coverage tracefiles.
struct BranchLoc {
  std::int64_t line = 0;
  std::int64_t block = 0;
  std::int64_t branch = 0;

  auto operator<=>(const BranchLoc&) const = default;
};

// Locator alternatives appear in the same order as the Granularity
// enumerators: line number, branch triple, function name, edge index.
using Locator = std::variant<std::int64_t, BranchLoc, std::string, std::uint64_t>;

// One instrumentable unit of the target program: a line of a file, a branch
// outcome, a function, or an edge slot in a bitmap. For edge units `file`
// is a synthetic namespace rather than a real path.
struct CoverageUnit {
  std::string file;
  Locator loc;

  Granularity granularity() const {
    return static_cast<Granularity>(loc.index());
  }

  // Total order: granularity first, then file, then locator value.
  friend std::strong_ordering operator<=>(const CoverageUnit& a,
                                          const CoverageUnit& b) {
    if (auto c = a.loc.index() <=> b.loc.index(); c != 0) return c;
    if (auto c = a.file <=> b.file; c != 0) return c;
    return a.loc <=> b.loc;
  }
  friend bool operator==(const CoverageUnit& a, const CoverageUnit& b) {
    return a.file == b.file && a.loc == b.loc;
  }
};

CoverageUnit line_unit(std::string file, std::int64_t line);
CoverageUnit branch_unit(std::string file, std::int64_t line,
                         std::int64_t block, std::int64_t branch);
CoverageUnit function_unit(std::string file, std::string name);
CoverageUnit edge_unit(std::uint64_t index);

// Renders a unit as "file:locator" for diagnostics and pretty reports.
std::string to_string(const CoverageUnit& unit);

using UnitSet = std::set<CoverageUnit>;

// The covered units of one execution (or accumulation of executions)
// together with the universe of all instrumented units. covered is always a
// subset of universe; the constructors widen the universe to keep that
// invariant. Instances are immutable after construction. The universe is
// held behind a shared pointer so that the many maps produced against one
// instrumented build share a single copy of it; equality still compares
// the sets by value.
class CoverageMap {
 public:
  using SharedUnits = std::shared_ptr<const UnitSet>;

  explicit CoverageMap(Granularity granularity)
      : granularity_(granularity),
        universe_(std::make_shared<const UnitSet>()) {}
  CoverageMap(Granularity granularity, UnitSet covered, UnitSet universe);
  // Shares `universe` unless it must be widened to contain `covered`.
  CoverageMap(Granularity granularity, UnitSet covered, SharedUnits universe);

  Granularity granularity() const { return granularity_; }
  const UnitSet& covered() const { return covered_; }
  const UnitSet& universe() const { return *universe_; }
  const SharedUnits& shared_universe() const { return universe_; }

  friend bool operator==(const CoverageMap& a, const CoverageMap& b) {
    return a.granularity_ == b.granularity_ && a.covered_ == b.covered_ &&
           (a.universe_ == b.universe_ || *a.universe_ == *b.universe_);
  }

 private:
  Granularity granularity_;
  UnitSet covered_;
  SharedUnits universe_;
};

// covered = a.covered ∪ b.covered, universe = a.universe ∪ b.universe.
// Throws GranularityMismatch if the maps disagree on granularity.
CoverageMap unite(const CoverageMap& a, const CoverageMap& b);

// covered = a.covered ∩ b.covered, universe = a.universe ∪ b.universe.
CoverageMap intersect(const CoverageMap& a, const CoverageMap& b);

// covered = (a ∪ b) − (a ∩ b): the differential coverage of the two maps.
// Symmetric in its arguments.
CoverageMap symmetric_difference(const CoverageMap& a, const CoverageMap& b);

// 100 * |covered| / |universe|. Throws EmptyUniverse when the universe is
// empty.
double coverage_percent(const CoverageMap& m);

// Collapses "." and ".." segments, normalizes separators to "/", and strips
// `strip_prefix` (itself normalized) when the path starts with it. Coverage
// tools emit machine-specific absolute paths; normalization keeps units
// comparable across runs.
std::string normalize_path(std::string_view path,
                           std::string_view strip_prefix = {});

}  // namespace mccov

#endif  // MCCOV_COVERAGE_HPP
