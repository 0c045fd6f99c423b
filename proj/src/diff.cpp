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
#include <string>
#include <string_view>

#include "mccov/analysis.hpp"

namespace mccov {

namespace {

[[noreturn]] void hunk_fail(std::size_t line_no, std::string_view line,
                            const std::string& why) {
  throw McError(ErrorKind::MalformedHunkHeader,
                "line " + std::to_string(line_no) + ": " + why + " '" +
                    std::string(line.substr(0, 80)) + "'");
}

// Parses "start[,count]" starting at *pos; count defaults to 1.
std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text,
                                                  std::size_t* pos,
                                                  std::size_t line_no,
                                                  std::string_view line) {
  std::int64_t start = 0;
  auto [p1, e1] = std::from_chars(text.data() + *pos,
                                  text.data() + text.size(), start);
  if (e1 != std::errc() || start < 0) hunk_fail(line_no, line, "bad hunk range in");
  *pos = static_cast<std::size_t>(p1 - text.data());
  std::int64_t count = 1;
  if (*pos < text.size() && text[*pos] == ',') {
    ++*pos;
    auto [p2, e2] = std::from_chars(text.data() + *pos,
                                    text.data() + text.size(), count);
    if (e2 != std::errc() || count < 0) hunk_fail(line_no, line, "bad hunk count in");
    *pos = static_cast<std::size_t>(p2 - text.data());
  }
  return {start, count};
}

// Strips the conventional a/ or b/ component and any trailing tab-separated
// timestamp from a ---/+++ header path.
std::string clean_diff_path(std::string_view raw, std::string_view strip_prefix) {
  if (std::size_t tab = raw.find('\t'); tab != std::string_view::npos) {
    raw = raw.substr(0, tab);
  }
  while (!raw.empty() && raw.back() == ' ') raw.remove_suffix(1);
  if (raw == "/dev/null") return std::string(raw);
  if (raw.size() > 2 && (raw.substr(0, 2) == "a/" || raw.substr(0, 2) == "b/")) {
    raw = raw.substr(2);
  }
  return normalize_path(raw, strip_prefix);
}

}  // namespace

FixLocations parse_unified_diff(std::string_view text,
                                std::string_view strip_prefix) {
  FixLocations fix;
  std::string post_file;      // Cleaned +++ path of the current file section.
  bool have_file = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  // Hunk body state. A hunk is open while either side still expects lines.
  std::int64_t old_left = 0;
  std::int64_t new_left = 0;
  std::int64_t post_line = 0;   // Post-fix number of the next hunk line.
  std::int64_t hunk_anchor = 0;
  bool hunk_added = false;
  bool hunk_deleted = false;
  std::size_t hunk_header_line = 0;

  auto close_hunk = [&]() {
    if (hunk_header_line == 0) return;
    // A hunk that only deletes still marks its post-fix anchor, so pure
    // deletions register as fixed locations.
    if (hunk_deleted && !hunk_added && have_file && post_file != "/dev/null") {
      fix.lines[post_file].insert(std::max<std::int64_t>(hunk_anchor, 1));
    }
    hunk_header_line = 0;
  };

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

    bool in_hunk = old_left > 0 || new_left > 0;
    if (in_hunk) {
      if (line.empty()) {
        // Tools that trim trailing whitespace emit empty context lines.
        --old_left;
        --new_left;
        ++post_line;
      } else {
        switch (line.front()) {
          case ' ':
            --old_left;
            --new_left;
            ++post_line;
            break;
          case '+':
            --new_left;
            hunk_added = true;
            if (post_file != "/dev/null") {
              fix.lines[post_file].insert(post_line);
            }
            ++post_line;
            break;
          case '-':
            --old_left;
            hunk_deleted = true;
            break;
          case '\\':
            break;  // "\ No newline at end of file" consumes no line.
          default:
            hunk_fail(hunk_header_line, line,
                      "unexpected line inside the hunk starting at line " +
                          std::to_string(hunk_header_line) + ":");
        }
      }
      if (old_left < 0 || new_left < 0) {
        hunk_fail(hunk_header_line, line, "hunk body overruns its header counts at");
      }
      if (old_left == 0 && new_left == 0) close_hunk();
      continue;
    }

    if (line.rfind("+++ ", 0) == 0) {
      close_hunk();
      post_file = clean_diff_path(line.substr(4), strip_prefix);
      have_file = true;
      continue;
    }
    if (line.rfind("@@ -", 0) == 0) {
      close_hunk();
      if (!have_file) hunk_fail(line_no, line, "hunk header before any +++ header:");
      std::size_t p = 4;
      auto [old_start, old_count] = parse_range(line, &p, line_no, line);
      (void)old_start;
      if (p + 2 > line.size() || line[p] != ' ' || line[p + 1] != '+') {
        hunk_fail(line_no, line, "malformed hunk header");
      }
      p += 2;
      auto [new_start, new_count] = parse_range(line, &p, line_no, line);
      if (p + 3 > line.size() || line.substr(p, 3) != " @@") {
        hunk_fail(line_no, line, "malformed hunk header");
      }
      old_left = old_count;
      new_left = new_count;
      post_line = new_start;
      hunk_anchor = new_start;
      hunk_added = false;
      hunk_deleted = false;
      hunk_header_line = line_no;
      if (old_left == 0 && new_left == 0) close_hunk();
      continue;
    }
    // Everything else between hunks is header noise: "diff --git",
    // "index ...", "--- a/...", mode lines, or prose around the diff.
  }
  if (old_left > 0 || new_left > 0) {
    throw McError(ErrorKind::MalformedHunkHeader,
                  "line " + std::to_string(hunk_header_line) +
                      ": hunk body ends before its header counts are met");
  }
  close_hunk();
  return fix;
}

}  // namespace mccov
