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
// Readers and writers for coverage artifacts: LCOV tracefiles, mccov JSON
// documents, and raw edge bitmaps. All parsers are pure functions from
// bytes to CoverageMap.

#ifndef MCCOV_INGEST_HPP
#define MCCOV_INGEST_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mccov/coverage.hpp"

namespace mccov {

enum class ArtifactFormat { Lcov, MccovJson, Bitmap };

const char* artifact_format_name(ArtifactFormat f);

struct IngestOptions {
  // Prefix removed from source paths during normalization, so that
  // machine-specific absolute paths compare equal across runs.
  std::string strip_prefix;
  // Expected bitmap length. Unset means the conventional 65536 bytes.
  std::optional<std::size_t> map_size;
  // Explicit format; unset means infer from the file extension
  // (.info -> Lcov, .json -> MccovJson, .map -> Bitmap).
  std::optional<ArtifactFormat> format;
};

// Parses an LCOV tracefile at the requested granularity.
//
// Recognized records: TN:, SF:, FN:<line>,<name>, FNDA:<count>,<name>,
// DA:<line>,<count>[,<checksum>] (checksum ignored), BRDA:<line>,<block>,
// <branch>,<taken>, end_of_record. Summary records (LF, LH, FNF, FNH, BRF,
// BRH) are skipped and recomputed. Any other record is a ParseError naming
// the input line. Duplicate DA records for one line sum their counts;
// duplicate BRDA records sum numeric taken counts, with "-" contributing
// nothing. A branch whose taken field is "-" (block never executed) is in
// the universe but not covered.
//
// Throws UnsupportedGranularity for Edge: tracefiles carry no edge data.
CoverageMap parse_lcov(std::string_view text, Granularity granularity,
                       const IngestOptions& opts = {});

// Parses an mccov JSON v1 document:
//
//   {"format":"mccov","version":1,"granularity":"line","files":[
//     {"path":"a.c","units":[{"loc":3,"count":1}]}]}
//
// `loc` is an integer for line and edge units, [line,block,branch] for
// branch units, and a string for function units. A unit with count > 0 is
// covered; every unit is in the universe. Malformed JSON text raises
// ParseError; a structurally valid document with a missing or mistyped
// field raises SchemaError naming the field. Requesting a granularity
// other than the document's raises WrongGranularity.
CoverageMap parse_mccov_json(std::string_view text, Granularity granularity,
                             const IngestOptions& opts = {});

// Serializes a map as a compact, deterministic mccov JSON v1 document:
// files sorted by path, units sorted ascending, covered units written with
// count 1 and uncovered universe units with count 0.
// parse_mccov_json(emit_mccov_json(m), m.granularity()) reproduces m.
std::string emit_mccov_json(const CoverageMap& m);

// Parses a raw edge bitmap: one byte per edge slot, covered where the byte
// is nonzero, universe = every index. The length must equal opts.map_size
// when set, 65536 otherwise; BadLength (an input error) otherwise. Units
// live in the synthetic file namespace "bitmap".
CoverageMap parse_bitmap(std::string_view bytes,
                         const IngestOptions& opts = {});

// One loaded artifact: the source path, the detected or declared format,
// and one map per requested granularity. All maps of one artifact come
// from the same bytes, so their universes describe the same build.
struct CoverageArtifact {
  std::string source;
  ArtifactFormat format = ArtifactFormat::Lcov;
  std::map<Granularity, CoverageMap> maps;
};

ArtifactFormat infer_format(std::string_view path);

// Reads the file and parses it at each requested granularity. IoError when
// the file cannot be read; parser errors propagate.
CoverageArtifact load_artifact(const std::string& path,
                               const std::vector<Granularity>& granularities,
                               const IngestOptions& opts = {});

// Convenience wrapper for the common one-granularity case.
CoverageMap load_coverage(const std::string& path, Granularity granularity,
                          const IngestOptions& opts = {});

}  // namespace mccov

#endif  // MCCOV_INGEST_HPP
