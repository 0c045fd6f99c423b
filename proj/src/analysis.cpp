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

#include "mccov/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <utility>

#include "mccov/rng.hpp"

namespace mccov {

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

}  // namespace

double coefficient_of_variation(const Sample& s) {
  if (s.values.size() < 2) {
    throw McError(ErrorKind::TooFewValues,
                  "sample '" + s.label + "' needs at least 2 values, has " +
                      std::to_string(s.values.size()));
  }
  double mean = mean_of(s.values);
  if (mean == 0.0) {
    throw McError(ErrorKind::ZeroMean,
                  "sample '" + s.label + "' has zero mean");
  }
  double sq = 0.0;
  for (double v : s.values) sq += (v - mean) * (v - mean);
  double stddev = std::sqrt(sq / static_cast<double>(s.values.size() - 1));
  return stddev / mean;
}

double pearson(const Sample& x, const Sample& y) {
  if (x.values.size() != y.values.size() || x.values.size() < 2) {
    throw McError(ErrorKind::LengthMismatch,
                  "samples '" + x.label + "' (" +
                      std::to_string(x.values.size()) + ") and '" + y.label +
                      "' (" + std::to_string(y.values.size()) +
                      ") must have equal length >= 2");
  }
  double mx = mean_of(x.values);
  double my = mean_of(y.values);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    double dx = x.values[i] - mx;
    double dy = y.values[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw McError(ErrorKind::ZeroVariance,
                  std::string("sample '") + (sxx == 0.0 ? x.label : y.label) +
                      "' is constant; correlation is undefined");
  }
  double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

std::vector<SubsetDraw> sample_subsets(std::size_t item_count,
                                       const std::vector<std::size_t>& sizes,
                                       std::size_t repeats,
                                       std::uint64_t seed) {
  if (repeats < 1) {
    throw McError(ErrorKind::InvalidArgument, "repeats must be >= 1");
  }
  for (std::size_t size : sizes) {
    if (size > item_count) {
      throw McError(ErrorKind::SizeTooLarge,
                    "subset size " + std::to_string(size) + " exceeds " +
                        std::to_string(item_count) + " items");
    }
  }

  SplitMix64 rng(seed);
  std::vector<std::size_t> deck(item_count);
  std::vector<SubsetDraw> out;
  out.reserve(sizes.size() * repeats);
  for (std::size_t size : sizes) {
    for (std::size_t rep = 0; rep < repeats; ++rep) {
      std::iota(deck.begin(), deck.end(), 0);
      // Partial shuffle: after k swaps the first k slots are a uniform
      // k-subset in uniform order; sorting drops the order.
      for (std::size_t i = 0; i < size; ++i) {
        std::size_t j = i + static_cast<std::size_t>(
                                rng.bounded(static_cast<std::uint64_t>(
                                    item_count - i)));
        std::swap(deck[i], deck[j]);
      }
      SubsetDraw draw;
      draw.size = size;
      draw.repeat = rep;
      draw.indices.assign(deck.begin(),
                          deck.begin() + static_cast<std::ptrdiff_t>(size));
      std::sort(draw.indices.begin(), draw.indices.end());
      out.push_back(std::move(draw));
    }
  }
  return out;
}

std::size_t FixLocations::line_count() const {
  std::size_t n = 0;
  for (const auto& [file, ls] : lines) n += ls.size();
  return n;
}

bool FixLocations::contains(const std::string& file,
                            std::int64_t line) const {
  auto it = lines.find(file);
  return it != lines.end() && it->second.contains(line);
}

OverlapResult overlap(const McReport& report, const FixLocations& fix) {
  if (report.granularity != Granularity::Line) {
    throw McError(ErrorKind::WrongGranularity,
                  std::string("overlap is defined on line coverage, the "
                              "report carries ") +
                      granularity_name(report.granularity) + " coverage");
  }
  OverlapResult result;
  for (const CoverageUnit& u : report.suite_mc) {
    if (fix.contains(u.file, std::get<std::int64_t>(u.loc))) {
      result.intersection.insert(u);
    }
  }
  result.overlapping = !result.intersection.empty();
  return result;
}

std::vector<Sample> parse_samples_csv(std::string_view text) {
  std::vector<Sample> samples;
  std::size_t row_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      if (pos == text.size()) break;
      eol = text.size();
    }
    std::string_view row = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++row_no;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (row.empty()) continue;

    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = row.find(',', start);
      if (comma == std::string_view::npos) {
        cells.push_back(row.substr(start));
        break;
      }
      cells.push_back(row.substr(start, comma - start));
      start = comma + 1;
    }

    if (row_no == 1) {
      for (std::string_view label : cells) {
        samples.push_back(Sample{std::string(label), {}});
      }
      continue;
    }
    if (cells.size() != samples.size()) {
      throw McError(ErrorKind::ParseError,
                    "row " + std::to_string(row_no) + " has " +
                        std::to_string(cells.size()) + " cells, header has " +
                        std::to_string(samples.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::string_view cell = cells[c];
      while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
      while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
      double value = 0.0;
      auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || ptr != cell.data() + cell.size() ||
          cell.empty() || !std::isfinite(value)) {
        throw McError(ErrorKind::ParseError,
                      "row " + std::to_string(row_no) +
                          ": expected a number, got '" + std::string(cell) +
                          "'");
      }
      samples[c].values.push_back(value);
    }
  }
  if (samples.empty()) {
    throw McError(ErrorKind::ParseError, "CSV holds no header row");
  }
  return samples;
}

}  // namespace mccov
