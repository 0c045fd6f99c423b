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
// Suite-level analyses: dispersion and correlation of per-suite metrics,
// reproducible random subset sampling, and overlap of a suite's
// differential coverage with the lines a bug fix touched.

#ifndef MCCOV_ANALYSIS_HPP
#define MCCOV_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mccov/coverage.hpp"
#include "mccov/metamorphic.hpp"

namespace mccov {

// A labeled metric column, e.g. one metric measured across several suites.
struct Sample {
  std::string label;
  std::vector<double> values;
};

// σ/μ with σ the sample standard deviation (n−1 denominator). Throws
// TooFewValues below two values and ZeroMean when the mean is zero.
double coefficient_of_variation(const Sample& s);

// Product-moment correlation in [−1, 1]. Throws LengthMismatch unless the
// samples have equal length ≥ 2, ZeroVariance when either is constant.
double pearson(const Sample& x, const Sample& y);

// One drawn subset: `indices` are sorted positions into the item list.
struct SubsetDraw {
  std::size_t size = 0;
  std::size_t repeat = 0;
  std::vector<std::size_t> indices;
};

// For each requested size, draws `repeats` uniform subsets without
// replacement from item_count items. Output order is (size in input order,
// repeat); the whole sequence is a pure function of the seed. Throws
// SizeTooLarge when a size exceeds item_count and InvalidArgument for zero
// repeats.
std::vector<SubsetDraw> sample_subsets(std::size_t item_count,
                                       const std::vector<std::size_t>& sizes,
                                       std::size_t repeats,
                                       std::uint64_t seed);

// Lines of the post-fix source that a fix touched, per file.
struct FixLocations {
  std::map<std::string, std::set<std::int64_t>> lines;

  bool empty() const { return lines.empty(); }
  std::size_t line_count() const;
  bool contains(const std::string& file, std::int64_t line) const;
};

// Extracts FixLocations from a unified diff. Every added line is recorded
// at its post-fix line number; a hunk that only deletes records the hunk's
// post-fix anchor line (clamped to 1) so pure deletions still register.
// Leading a/ and b/ path components and trailing timestamps are stripped,
// then `strip_prefix` (as in path normalization). Whole-file deletions
// (+++ /dev/null) contribute nothing: the post-fix version has no lines.
// Non-diff noise between file headers (git metadata) is skipped. Throws
// MalformedHunkHeader when a @@ header or a hunk body is inconsistent.
FixLocations parse_unified_diff(std::string_view text,
                                std::string_view strip_prefix = {});

struct OverlapResult {
  bool overlapping = false;
  // The MC units on fixed lines.
  UnitSet intersection;
};

// A suite's MC overlaps a fix when at least one MC line is a fixed line.
// Defined on line granularity; WrongGranularity otherwise.
OverlapResult overlap(const McReport& report, const FixLocations& fix);

// Parses a CSV of metric columns: first row holds labels, every following
// row holds one number per column. ParseError names the offending row.
std::vector<Sample> parse_samples_csv(std::string_view text);

}  // namespace mccov

#endif  // MCCOV_ANALYSIS_HPP
