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

#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "mccov/ingest.hpp"

namespace mccov {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, std::string_view token,
                             const std::string& why) {
  throw McError(ErrorKind::ParseError,
                "line " + std::to_string(line_no) + ": " + why + " '" +
                    std::string(token) + "'");
}

std::int64_t parse_int(std::string_view field, std::size_t line_no) {
  std::int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    parse_fail(line_no, field, "expected an integer, got");
  }
  return value;
}

// Splits "a,b,c" into at most `max_fields` pieces; the last piece keeps any
// remaining commas (function names may not contain commas per the format,
// but being permissive here costs nothing).
std::vector<std::string_view> split_fields(std::string_view body,
                                           std::size_t max_fields) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (out.size() + 1 < max_fields) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string_view::npos) break;
    out.push_back(body.substr(start, comma - start));
    start = comma + 1;
  }
  out.push_back(body.substr(start));
  return out;
}

struct BranchKey {
  std::string file;
  std::int64_t line;
  std::int64_t block;
  std::int64_t branch;
  auto operator<=>(const BranchKey&) const = default;
};

}  // namespace

CoverageMap parse_lcov(std::string_view text, Granularity granularity,
                       const IngestOptions& opts) {
  if (granularity == Granularity::Edge) {
    throw McError(ErrorKind::UnsupportedGranularity,
                  "tracefiles carry line, branch, and function data; "
                  "edge coverage comes from bitmap artifacts");
  }

  // Accumulators keyed by unit identity; counts merge before the covered
  // set is decided, so duplicate records inside or across blocks behave
  // like an lcov merge.
  std::map<std::pair<std::string, std::int64_t>, std::int64_t> line_counts;
  std::map<std::pair<std::string, std::string>, std::int64_t> fn_counts;
  std::map<std::pair<std::string, std::string>, bool> fn_known;
  // Branch value: (saw a numeric taken field, sum of numeric taken fields).
  std::map<BranchKey, std::pair<bool, std::int64_t>> branch_counts;

  std::string current_file;
  bool in_block = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      if (pos == text.size()) break;
      eol = text.size();
    }
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (line == "end_of_record") {
      if (!in_block) parse_fail(line_no, line, "record terminator outside a source-file block");
      in_block = false;
      current_file.clear();
      continue;
    }

    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      parse_fail(line_no, line, "unrecognized record");
    }
    std::string_view kind = line.substr(0, colon);
    std::string_view body = line.substr(colon + 1);

    if (kind == "TN") continue;  // Test names do not affect coverage.
    if (kind == "LF" || kind == "LH" || kind == "FNF" || kind == "FNH" ||
        kind == "BRF" || kind == "BRH") {
      continue;  // Summary counts are recomputed, never trusted.
    }

    if (kind == "SF") {
      if (in_block) parse_fail(line_no, line, "source-file record inside an open block");
      current_file = normalize_path(body, opts.strip_prefix);
      in_block = true;
      continue;
    }

    if (!in_block) parse_fail(line_no, line, "record outside a source-file block");

    if (kind == "DA") {
      auto fields = split_fields(body, 3);  // line,count[,checksum ignored]
      if (fields.size() < 2) parse_fail(line_no, line, "expected DA:<line>,<count> in");
      std::int64_t l = parse_int(fields[0], line_no);
      std::int64_t count = parse_int(fields[1], line_no);
      if (count < 0) parse_fail(line_no, fields[1], "negative execution count");
      line_counts[{current_file, l}] += count;
    } else if (kind == "FN") {
      auto fields = split_fields(body, 2);  // line,name
      if (fields.size() < 2) parse_fail(line_no, line, "expected FN:<line>,<name> in");
      parse_int(fields[0], line_no);  // Start line: validated, not stored.
      fn_known[{current_file, std::string(fields[1])}] = true;
    } else if (kind == "FNDA") {
      auto fields = split_fields(body, 2);  // count,name
      if (fields.size() < 2) parse_fail(line_no, line, "expected FNDA:<count>,<name> in");
      std::int64_t count = parse_int(fields[0], line_no);
      if (count < 0) parse_fail(line_no, fields[0], "negative execution count");
      fn_counts[{current_file, std::string(fields[1])}] += count;
    } else if (kind == "BRDA") {
      auto fields = split_fields(body, 4);  // line,block,branch,taken
      if (fields.size() < 4) {
        parse_fail(line_no, line, "expected BRDA:<line>,<block>,<branch>,<taken> in");
      }
      BranchKey key{current_file, parse_int(fields[0], line_no),
                    parse_int(fields[1], line_no),
                    parse_int(fields[2], line_no)};
      auto& [numeric, total] = branch_counts[key];
      if (fields[3] != "-") {
        std::int64_t taken = parse_int(fields[3], line_no);
        if (taken < 0) parse_fail(line_no, fields[3], "negative taken count");
        numeric = true;
        total += taken;
      }
    } else {
      parse_fail(line_no, kind, "unrecognized record");
    }
  }

  UnitSet covered;
  UnitSet universe;
  switch (granularity) {
    case Granularity::Line:
      for (const auto& [key, count] : line_counts) {
        CoverageUnit u = line_unit(key.first, key.second);
        universe.insert(u);
        if (count > 0) covered.insert(std::move(u));
      }
      break;
    case Granularity::Branch:
      for (const auto& [key, state] : branch_counts) {
        CoverageUnit u = branch_unit(key.file, key.line, key.block, key.branch);
        universe.insert(u);
        if (state.first && state.second > 0) covered.insert(std::move(u));
      }
      break;
    case Granularity::Function:
      for (const auto& [key, known] : fn_known) {
        (void)known;
        universe.insert(function_unit(key.first, key.second));
      }
      for (const auto& [key, count] : fn_counts) {
        CoverageUnit u = function_unit(key.first, key.second);
        universe.insert(u);
        if (count > 0) covered.insert(std::move(u));
      }
      break;
    case Granularity::Edge:
      break;  // Rejected above.
  }
  return CoverageMap(granularity, std::move(covered), std::move(universe));
}

}  // namespace mccov
