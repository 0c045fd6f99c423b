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

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mccov/ingest.hpp"

namespace mccov {

const char* artifact_format_name(ArtifactFormat f) {
  switch (f) {
    case ArtifactFormat::Lcov: return "lcov";
    case ArtifactFormat::MccovJson: return "mccov-json";
    case ArtifactFormat::Bitmap: return "bitmap";
  }
  return "unknown";
}

ArtifactFormat infer_format(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".info")) return ArtifactFormat::Lcov;
  if (ends_with(".json")) return ArtifactFormat::MccovJson;
  if (ends_with(".map")) return ArtifactFormat::Bitmap;
  throw McError(ErrorKind::InvalidArgument,
                "cannot infer coverage format of '" + std::string(path) +
                    "'; expected .info, .json, or .map, or pass --format");
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw McError(ErrorKind::IoError, "cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw McError(ErrorKind::IoError, "cannot read '" + path + "'");
  }
  return std::move(buf).str();
}

CoverageMap parse_artifact(const std::string& text, ArtifactFormat format,
                           Granularity granularity,
                           const IngestOptions& opts) {
  switch (format) {
    case ArtifactFormat::Lcov:
      return parse_lcov(text, granularity, opts);
    case ArtifactFormat::MccovJson:
      return parse_mccov_json(text, granularity, opts);
    case ArtifactFormat::Bitmap:
      if (granularity != Granularity::Edge) {
        throw McError(ErrorKind::UnsupportedGranularity,
                      std::string("bitmaps carry edge coverage only, not ") +
                          granularity_name(granularity));
      }
      return parse_bitmap(text, opts);
  }
  throw McError(ErrorKind::InvalidArgument, "unknown artifact format");
}

}  // namespace

CoverageArtifact load_artifact(const std::string& path,
                               const std::vector<Granularity>& granularities,
                               const IngestOptions& opts) {
  ArtifactFormat format = opts.format ? *opts.format : infer_format(path);
  std::string text = read_file(path);

  CoverageArtifact artifact;
  artifact.source = path;
  artifact.format = format;
  for (Granularity g : granularities) {
    artifact.maps.emplace(g, parse_artifact(text, format, g, opts));
  }
  return artifact;
}

CoverageMap load_coverage(const std::string& path, Granularity granularity,
                          const IngestOptions& opts) {
  CoverageArtifact artifact = load_artifact(path, {granularity}, opts);
  return std::move(artifact.maps.at(granularity));
}

}  // namespace mccov
