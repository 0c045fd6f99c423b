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

#include "mccov/coverage.hpp"

#include <algorithm>
#include <iterator>
#include <vector>

namespace mccov {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::BadLength: return "BadLength";
    case ErrorKind::MalformedHunkHeader: return "MalformedHunkHeader";
    case ErrorKind::UnknownFixture: return "UnknownFixture";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::GranularityMismatch: return "GranularityMismatch";
    case ErrorKind::UnsupportedGranularity: return "UnsupportedGranularity";
    case ErrorKind::EmptyUniverse: return "EmptyUniverse";
    case ErrorKind::UniverseMismatch: return "UniverseMismatch";
    case ErrorKind::EmptySide: return "EmptySide";
    case ErrorKind::EmptySuite: return "EmptySuite";
    case ErrorKind::ZeroMean: return "ZeroMean";
    case ErrorKind::TooFewValues: return "TooFewValues";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::SizeTooLarge: return "SizeTooLarge";
    case ErrorKind::WrongGranularity: return "WrongGranularity";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NoMutants: return "NoMutants";
    case ErrorKind::TargetFailure: return "TargetFailure";
  }
  return "UnknownError";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::BadLength:
    case ErrorKind::MalformedHunkHeader:
    case ErrorKind::UnknownFixture:
    case ErrorKind::InvalidArgument:
    case ErrorKind::IoError:
      return true;
    default:
      return false;
  }
}

const char* granularity_name(Granularity g) {
  switch (g) {
    case Granularity::Line: return "line";
    case Granularity::Branch: return "branch";
    case Granularity::Function: return "function";
    case Granularity::Edge: return "edge";
  }
  return "unknown";
}

Granularity granularity_from_name(std::string_view name) {
  if (name == "line") return Granularity::Line;
  if (name == "branch") return Granularity::Branch;
  if (name == "function") return Granularity::Function;
  if (name == "edge") return Granularity::Edge;
  throw McError(ErrorKind::InvalidArgument,
                "unknown granularity '" + std::string(name) + "'");
}

CoverageUnit line_unit(std::string file, std::int64_t line) {
  return CoverageUnit{std::move(file), Locator(std::in_place_index<0>, line)};
}

CoverageUnit branch_unit(std::string file, std::int64_t line,
                         std::int64_t block, std::int64_t branch) {
  return CoverageUnit{std::move(file),
                      Locator(std::in_place_index<1>,
                              BranchLoc{line, block, branch})};
}

CoverageUnit function_unit(std::string file, std::string name) {
  return CoverageUnit{std::move(file),
                      Locator(std::in_place_index<2>, std::move(name))};
}

CoverageUnit edge_unit(std::uint64_t index) {
  return CoverageUnit{"bitmap", Locator(std::in_place_index<3>, index)};
}

std::string to_string(const CoverageUnit& unit) {
  struct Renderer {
    std::string operator()(std::int64_t line) const {
      return std::to_string(line);
    }
    std::string operator()(const BranchLoc& b) const {
      return std::to_string(b.line) + "." + std::to_string(b.block) + "." +
             std::to_string(b.branch);
    }
    std::string operator()(const std::string& fn) const { return fn; }
    std::string operator()(std::uint64_t edge) const {
      return std::to_string(edge);
    }
  };
  return unit.file + ":" + std::visit(Renderer{}, unit.loc);
}

namespace {

void check_units(Granularity granularity, const UnitSet& units,
                 const char* what) {
  for (const CoverageUnit& u : units) {
    if (u.granularity() != granularity) {
      throw McError(ErrorKind::GranularityMismatch,
                    std::string(what) + " unit " + to_string(u) + " is " +
                        granularity_name(u.granularity()) +
                        " in a " + granularity_name(granularity) + " map");
    }
  }
}

void check_same_granularity(const CoverageMap& a, const CoverageMap& b) {
  if (a.granularity() != b.granularity()) {
    throw McError(ErrorKind::GranularityMismatch,
                  std::string("cannot combine ") +
                      granularity_name(a.granularity()) + " coverage with " +
                      granularity_name(b.granularity()) + " coverage");
  }
}

UnitSet set_union(const UnitSet& a, const UnitSet& b) {
  UnitSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::inserter(out, out.end()));
  return out;
}

UnitSet set_intersection(const UnitSet& a, const UnitSet& b) {
  UnitSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

UnitSet set_symmetric_difference(const UnitSet& a, const UnitSet& b) {
  UnitSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::inserter(out, out.end()));
  return out;
}

}  // namespace

CoverageMap::CoverageMap(Granularity granularity, UnitSet covered,
                         UnitSet universe)
    : granularity_(granularity), covered_(std::move(covered)) {
  check_units(granularity_, covered_, "covered");
  check_units(granularity_, universe, "universe");
  universe_ =
      std::make_shared<const UnitSet>(set_union(universe, covered_));
}

CoverageMap::CoverageMap(Granularity granularity, UnitSet covered,
                         SharedUnits universe)
    : granularity_(granularity),
      covered_(std::move(covered)),
      universe_(std::move(universe)) {
  check_units(granularity_, covered_, "covered");
  if (!std::includes(universe_->begin(), universe_->end(), covered_.begin(),
                     covered_.end())) {
    check_units(granularity_, *universe_, "universe");
    universe_ = std::make_shared<const UnitSet>(
        set_union(*universe_, covered_));
  }
}

namespace {

// Universe of a combination: shares the operands' universe when they hold
// the same set object, unions otherwise.
CoverageMap::SharedUnits combined_universe(const CoverageMap& a,
                                           const CoverageMap& b) {
  if (a.shared_universe() == b.shared_universe()) return a.shared_universe();
  return std::make_shared<const UnitSet>(
      set_union(a.universe(), b.universe()));
}

}  // namespace

CoverageMap unite(const CoverageMap& a, const CoverageMap& b) {
  check_same_granularity(a, b);
  return CoverageMap(a.granularity(), set_union(a.covered(), b.covered()),
                     combined_universe(a, b));
}

CoverageMap intersect(const CoverageMap& a, const CoverageMap& b) {
  check_same_granularity(a, b);
  return CoverageMap(a.granularity(),
                     set_intersection(a.covered(), b.covered()),
                     combined_universe(a, b));
}

CoverageMap symmetric_difference(const CoverageMap& a, const CoverageMap& b) {
  check_same_granularity(a, b);
  return CoverageMap(a.granularity(),
                     set_symmetric_difference(a.covered(), b.covered()),
                     combined_universe(a, b));
}

double coverage_percent(const CoverageMap& m) {
  if (m.universe().empty()) {
    throw McError(ErrorKind::EmptyUniverse,
                  "coverage percent of an empty universe is undefined");
  }
  return 100.0 * static_cast<double>(m.covered().size()) /
         static_cast<double>(m.universe().size());
}

std::string normalize_path(std::string_view path,
                           std::string_view strip_prefix) {
  auto split = [](std::string_view p) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= p.size()) {
      std::size_t sep = p.find_first_of("/\\", start);
      if (sep == std::string_view::npos) sep = p.size();
      std::string_view part = p.substr(start, sep - start);
      if (part == "..") {
        if (!parts.empty() && parts.back() != "..") {
          parts.pop_back();
        } else {
          parts.push_back(part);
        }
      } else if (!part.empty() && part != ".") {
        parts.push_back(part);
      }
      start = sep + 1;
    }
    return parts;
  };

  bool absolute = !path.empty() && (path.front() == '/' || path.front() == '\\');
  std::vector<std::string_view> parts = split(path);
  std::vector<std::string_view> prefix = split(strip_prefix);

  if (!prefix.empty() && prefix.size() <= parts.size() &&
      std::equal(prefix.begin(), prefix.end(), parts.begin())) {
    parts.erase(parts.begin(),
                parts.begin() + static_cast<std::ptrdiff_t>(prefix.size()));
    absolute = false;
  }

  std::string out;
  if (absolute) out = "/";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += "/";
    out += parts[i];
  }
  if (out.empty()) out = ".";
  return out;
}

}  // namespace mccov
