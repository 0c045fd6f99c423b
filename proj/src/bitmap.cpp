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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "mccov/ingest.hpp"

namespace mccov {

namespace {
constexpr std::size_t kDefaultMapSize = 65536;
}

CoverageMap parse_bitmap(std::string_view bytes, const IngestOptions& opts) {
  std::size_t expected = opts.map_size.value_or(kDefaultMapSize);
  if (bytes.size() != expected) {
    throw McError(ErrorKind::BadLength,
                  "bitmap holds " + std::to_string(bytes.size()) +
                      " bytes, expected " + std::to_string(expected) +
                      (opts.map_size ? "" : " (pass --map-size for other sizes)"));
  }

  UnitSet covered;
  UnitSet universe;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    CoverageUnit u = edge_unit(static_cast<std::uint64_t>(i));
    if (static_cast<unsigned char>(bytes[i]) > 0) covered.insert(u);
    universe.insert(std::move(u));
  }
  return CoverageMap(Granularity::Edge, std::move(covered),
                     std::move(universe));
}

}  // namespace mccov
