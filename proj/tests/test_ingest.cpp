// Copyright 2026 The mccov Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mccov/ingest.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mccov/rng.hpp"

using namespace mccov;

namespace {

std::string fixture_path(const std::string& name) {
  return std::string(MCCOV_FIXTURE_DIR) + "/" + name;
}

std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

UnitSet lines(const std::string& file, const std::vector<std::int64_t>& ls) {
  UnitSet out;
  for (auto l : ls) out.insert(line_unit(file, l));
  return out;
}

// Generates a random map at the given granularity for round-trip tests.
CoverageMap random_map(SplitMix64& rng, Granularity g) {
  static const std::vector<std::string> files = {"a.c", "b.c", "dir/c.c"};
  UnitSet covered;
  UnitSet universe;
  auto add = [&](CoverageUnit u) {
    if (rng.bounded(2) == 0) covered.insert(u);
    universe.insert(std::move(u));
  };
  std::uint64_t n = 1 + rng.bounded(40);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::string& f = files[rng.bounded(files.size())];
    switch (g) {
      case Granularity::Line:
        add(line_unit(f, static_cast<std::int64_t>(1 + rng.bounded(500))));
        break;
      case Granularity::Branch:
        add(branch_unit(f, static_cast<std::int64_t>(1 + rng.bounded(100)),
                        static_cast<std::int64_t>(rng.bounded(4)),
                        static_cast<std::int64_t>(rng.bounded(4))));
        break;
      case Granularity::Function:
        add(function_unit(f, "fn_" + std::to_string(rng.bounded(50))));
        break;
      case Granularity::Edge:
        add(edge_unit(rng.bounded(65536)));
        break;
    }
  }
  return CoverageMap(g, std::move(covered), std::move(universe));
}

}  // namespace

TEST_CASE("lcov: minimal block") {
  CoverageMap m = parse_lcov("SF:a.c\nDA:3,1\nDA:5,0\nend_of_record\n",
                             Granularity::Line);
  CHECK(m.covered() == lines("a.c", {3}));
  CHECK(m.universe() == lines("a.c", {3, 5}));
}

TEST_CASE("lcov: golden tracefiles for the absolute difference target") {
  IngestOptions opts;
  opts.strip_prefix = "/work/src";
  CoverageMap a =
      parse_lcov(read_fixture("lcov/difference_a.info"), Granularity::Line, opts);
  CoverageMap b =
      parse_lcov(read_fixture("lcov/difference_b.info"), Granularity::Line, opts);

  CHECK(a.covered() == lines("difference.c", {2, 4, 5, 6, 7}));
  CHECK(b.covered() == lines("difference.c", {2, 3, 4, 6, 7}));
  CHECK(a.universe() == lines("difference.c", {2, 3, 4, 5, 6, 7}));
  CHECK(a.universe() == b.universe());
  CHECK(symmetric_difference(a, b).covered() == lines("difference.c", {3, 5}));

  // The same files carry one flipped branch pair at line 2.
  CoverageMap ba = parse_lcov(read_fixture("lcov/difference_a.info"),
                              Granularity::Branch, opts);
  CoverageMap bb = parse_lcov(read_fixture("lcov/difference_b.info"),
                              Granularity::Branch, opts);
  UnitSet both = {branch_unit("difference.c", 2, 0, 0),
                  branch_unit("difference.c", 2, 0, 1)};
  CHECK(ba.covered() == UnitSet{branch_unit("difference.c", 2, 0, 1)});
  CHECK(bb.covered() == UnitSet{branch_unit("difference.c", 2, 0, 0)});
  CHECK(ba.universe() == both);
  CHECK(symmetric_difference(ba, bb).covered() == both);

  // And one function, covered on both sides.
  CoverageMap fa = parse_lcov(read_fixture("lcov/difference_a.info"),
                              Granularity::Function, opts);
  CHECK(fa.covered() == UnitSet{function_unit("difference.c", "difference")});
}

TEST_CASE("lcov: merge semantics across duplicate records and blocks") {
  IngestOptions opts;
  opts.strip_prefix = "/work/src";
  std::string text = read_fixture("lcov/merged.info");

  CoverageMap l = parse_lcov(text, Granularity::Line, opts);
  CHECK(l.covered() == lines("util.c", {10, 11, 12}));
  CHECK(l.universe() == lines("util.c", {10, 11, 12, 13}));

  CoverageMap b = parse_lcov(text, Granularity::Branch, opts);
  CHECK(b.covered() == UnitSet{branch_unit("util.c", 4, 0, 0)});
  CHECK(b.universe() == UnitSet{branch_unit("util.c", 4, 0, 0),
                                branch_unit("util.c", 4, 0, 1),
                                branch_unit("util.c", 5, 0, 0)});

  CoverageMap f = parse_lcov(text, Granularity::Function, opts);
  CHECK(f.covered() == UnitSet{function_unit("util.c", "helper"),
                               function_unit("util.c", "extern_only")});
  CHECK(f.universe() == UnitSet{function_unit("util.c", "helper"),
                                function_unit("util.c", "unused_helper"),
                                function_unit("util.c", "extern_only")});
}

TEST_CASE("lcov: branch taken '-' means in universe, not covered") {
  CoverageMap m = parse_lcov("SF:a.c\nBRDA:10,0,1,-\nend_of_record\n",
                             Granularity::Branch);
  CHECK(m.covered().empty());
  CHECK(m.universe() == UnitSet{branch_unit("a.c", 10, 0, 1)});
}

TEST_CASE("lcov: record order within a block does not matter") {
  std::string fwd = "SF:a.c\nDA:1,1\nDA:2,0\nDA:3,4\nend_of_record\n";
  std::string rev = "SF:a.c\nDA:3,4\nDA:2,0\nDA:1,1\nend_of_record\n";
  CHECK(parse_lcov(fwd, Granularity::Line).covered() ==
        parse_lcov(rev, Granularity::Line).covered());
  CHECK(parse_lcov(fwd, Granularity::Line).universe() ==
        parse_lcov(rev, Granularity::Line).universe());
}

TEST_CASE("lcov: synthetic tracefile matches an independent re-scan") {
  // Build a synthetic tracefile, parse it, then re-derive the expected map
  // with a second, structurally different scan over the same text.
  SplitMix64 rng(2024);
  std::ostringstream out;
  for (int block = 0; block < 10; ++block) {
    out << "SF:/src/f" << rng.bounded(4) << ".c\n";
    int n = 20 + static_cast<int>(rng.bounded(30));
    for (int i = 0; i < n; ++i) {
      out << "DA:" << (1 + rng.bounded(400)) << "," << rng.bounded(3) << "\n";
    }
    out << "end_of_record\n";
  }
  std::string text = out.str();

  CoverageMap parsed = parse_lcov(text, Granularity::Line);

  std::map<std::pair<std::string, std::int64_t>, std::int64_t> sums;
  std::istringstream in(text);
  std::string line;
  std::string file;
  while (std::getline(in, line)) {
    if (line.rfind("SF:", 0) == 0) {
      file = line.substr(3);
    } else if (line.rfind("DA:", 0) == 0) {
      std::size_t comma = line.find(',');
      sums[{file, std::stoll(line.substr(3, comma - 3))}] +=
          std::stoll(line.substr(comma + 1));
    }
  }
  UnitSet want_covered;
  UnitSet want_universe;
  for (const auto& [key, sum] : sums) {
    CoverageUnit u = line_unit(key.first, key.second);
    if (sum > 0) want_covered.insert(u);
    want_universe.insert(u);
  }
  CHECK(parsed.covered() == want_covered);
  CHECK(parsed.universe() == want_universe);
}

TEST_CASE("lcov: errors") {
  SUBCASE("edge granularity is not derivable") {
    CHECK_THROWS_AS(parse_lcov("SF:a.c\nend_of_record\n", Granularity::Edge),
                    McError);
    try {
      parse_lcov("", Granularity::Edge);
    } catch (const McError& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedGranularity);
    }
  }
  SUBCASE("unknown record names the line") {
    try {
      parse_lcov("SF:a.c\nXX:1\nend_of_record\n", Granularity::Line);
      FAIL("expected ParseError");
    } catch (const McError& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
      CHECK(std::string(e.what()).find("XX") != std::string::npos);
    }
  }
  SUBCASE("bad integers and malformed fields") {
    CHECK_THROWS_AS(parse_lcov("SF:a.c\nDA:x,1\nend_of_record\n",
                               Granularity::Line), McError);
    CHECK_THROWS_AS(parse_lcov("SF:a.c\nDA:5\nend_of_record\n",
                               Granularity::Line), McError);
    CHECK_THROWS_AS(parse_lcov("SF:a.c\nBRDA:1,0,0\nend_of_record\n",
                               Granularity::Branch), McError);
    CHECK_THROWS_AS(parse_lcov("SF:a.c\nDA:5,-2\nend_of_record\n",
                               Granularity::Line), McError);
  }
  SUBCASE("records outside a block") {
    CHECK_THROWS_AS(parse_lcov("DA:1,1\n", Granularity::Line), McError);
    CHECK_THROWS_AS(parse_lcov("end_of_record\n", Granularity::Line), McError);
    CHECK_THROWS_AS(parse_lcov("SF:a.c\nSF:b.c\n", Granularity::Line), McError);
  }
}

TEST_CASE("mccov json: minimal documents") {
  std::string doc = R"({"format":"mccov","version":1,"granularity":"line",)"
                    R"("files":[{"path":"f.c","units":[{"loc":3,"count":2}]}]})";
  CoverageMap m = parse_mccov_json(doc, Granularity::Line);
  CHECK(m.covered() == lines("f.c", {3}));
  CHECK(m.universe() == lines("f.c", {3}));

  std::string empty = R"({"format":"mccov","version":1,"granularity":"line",)"
                      R"("files":[]})";
  CoverageMap e = parse_mccov_json(empty, Granularity::Line);
  CHECK(e.universe().empty());
}

TEST_CASE("mccov json: all locator shapes") {
  std::string doc = R"({"format":"mccov","version":1,"granularity":"branch",
    "files":[{"path":"f.c","units":[
      {"loc":[4,0,1],"count":1},{"loc":[4,0,0],"count":0}]}]})";
  CoverageMap b = parse_mccov_json(doc, Granularity::Branch);
  CHECK(b.covered() == UnitSet{branch_unit("f.c", 4, 0, 1)});
  CHECK(b.universe().size() == 2);

  std::string fn = R"({"format":"mccov","version":1,"granularity":"function",
    "files":[{"path":"f.c","units":[{"loc":"main","count":7}]}]})";
  CHECK(parse_mccov_json(fn, Granularity::Function).covered() ==
        UnitSet{function_unit("f.c", "main")});

  std::string edge = R"({"format":"mccov","version":1,"granularity":"edge",
    "files":[{"path":"bitmap","units":[{"loc":42,"count":1}]}]})";
  CHECK(parse_mccov_json(edge, Granularity::Edge).covered() ==
        UnitSet{edge_unit(42)});
}

TEST_CASE("mccov json: round-trip identity on random maps") {
  SplitMix64 rng(7);
  for (Granularity g : {Granularity::Line, Granularity::Branch,
                        Granularity::Function, Granularity::Edge}) {
    for (int i = 0; i < 50; ++i) {
      CoverageMap m = random_map(rng, g);
      CoverageMap back = parse_mccov_json(emit_mccov_json(m), g);
      CHECK(back == m);
      // Emission is deterministic: same map, same bytes.
      CHECK(emit_mccov_json(m) == emit_mccov_json(back));
    }
  }
}

TEST_CASE("mccov json: schema errors name the field") {
  auto kind_of = [](const std::string& doc, Granularity g) {
    try {
      parse_mccov_json(doc, g);
      return std::string("no error");
    } catch (const McError& e) {
      return std::string(e.what());
    }
  };

  CHECK(kind_of("{", Granularity::Line).find("ParseError") == 0);
  CHECK(kind_of("[]", Granularity::Line).find("SchemaError") == 0);
  CHECK(kind_of(R"({"version":1,"granularity":"line","files":[]})",
                Granularity::Line)
            .find("$.format") != std::string::npos);
  CHECK(kind_of(R"({"format":"gcovr","version":1,"granularity":"line","files":[]})",
                Granularity::Line)
            .find("$.format") != std::string::npos);
  CHECK(kind_of(R"({"format":"mccov","version":2,"granularity":"line","files":[]})",
                Granularity::Line)
            .find("$.version") != std::string::npos);
  CHECK(kind_of(R"({"format":"mccov","version":1,"granularity":"line","files":{}})",
                Granularity::Line)
            .find("$.files") != std::string::npos);
  CHECK(kind_of(R"({"format":"mccov","version":1,"granularity":"line",
                    "files":[{"path":"f.c","units":[{"count":1}]}]})",
                Granularity::Line)
            .find("units[0].loc") != std::string::npos);
  CHECK(kind_of(R"({"format":"mccov","version":1,"granularity":"line",
                    "files":[{"path":"f.c","units":[{"loc":3,"count":-1}]}]})",
                Granularity::Line)
            .find("count") != std::string::npos);
  CHECK(kind_of(R"({"format":"mccov","version":1,"granularity":"line",
                    "files":[{"path":"f.c","units":[{"loc":"x","count":1}]}]})",
                Granularity::Line)
            .find("loc") != std::string::npos);
}

TEST_CASE("mccov json: requesting another granularity fails") {
  std::string doc = R"({"format":"mccov","version":1,"granularity":"line","files":[]})";
  try {
    parse_mccov_json(doc, Granularity::Branch);
    FAIL("expected WrongGranularity");
  } catch (const McError& e) {
    CHECK(e.kind() == ErrorKind::WrongGranularity);
  }
}

TEST_CASE("bitmap: thresholds and lengths") {
  SUBCASE("all-zero default-size map") {
    std::string zeros(65536, '\0');
    CoverageMap m = parse_bitmap(zeros);
    CHECK(m.covered().empty());
    CHECK(m.universe().size() == 65536);
  }
  SUBCASE("single byte set") {
    std::string bytes(65536, '\0');
    bytes[7] = 1;
    CoverageMap m = parse_bitmap(bytes);
    CHECK(m.covered() == UnitSet{edge_unit(7)});
  }
  SUBCASE("random bytes match an independent nonzero scan") {
    SplitMix64 rng(11);
    IngestOptions opts;
    opts.map_size = 1024;
    std::string bytes(1024, '\0');
    std::size_t nonzero = 0;
    for (auto& c : bytes) {
      c = static_cast<char>(rng.bounded(4));
      if (c != 0) ++nonzero;
    }
    CoverageMap m = parse_bitmap(bytes, opts);
    CHECK(m.covered().size() == nonzero);
    CHECK(m.universe().size() == 1024);
  }
  SUBCASE("length contract") {
    CHECK_THROWS_AS(parse_bitmap(std::string(100, '\0')), McError);
    try {
      parse_bitmap(std::string(100, '\0'));
    } catch (const McError& e) {
      CHECK(e.kind() == ErrorKind::BadLength);
      CHECK(is_input_error(e.kind()));
    }
    IngestOptions opts;
    opts.map_size = 100;
    CHECK(parse_bitmap(std::string(100, '\0'), opts).universe().size() == 100);
    CHECK_THROWS_AS(parse_bitmap(std::string(65536, '\0'), opts), McError);
  }
}

TEST_CASE("artifact loading infers format from the extension") {
  CHECK(infer_format("cov.info") == ArtifactFormat::Lcov);
  CHECK(infer_format("cov.json") == ArtifactFormat::MccovJson);
  CHECK(infer_format("cov.map") == ArtifactFormat::Bitmap);
  CHECK_THROWS_AS(infer_format("cov.xml"), McError);

  IngestOptions opts;
  opts.strip_prefix = "/work/src";
  CoverageMap a = load_coverage(fixture_path("lcov/difference_a.info"),
                                Granularity::Line, opts);
  CHECK(a.covered() == lines("difference.c", {2, 4, 5, 6, 7}));

  IngestOptions small;
  small.map_size = 512;
  CoverageMap bm = load_coverage(fixture_path("lcov/small.map"),
                                 Granularity::Edge, small);
  CHECK(bm.covered() == UnitSet{edge_unit(3), edge_unit(200)});

  // The format override beats the extension.
  IngestOptions forced = small;
  forced.format = ArtifactFormat::Bitmap;
  std::string as_map = fixture_path("lcov/small.map");
  CHECK(load_coverage(as_map, Granularity::Edge, forced).covered().size() == 2);

  // Requesting line coverage from a bitmap cannot work.
  CHECK_THROWS_AS(load_coverage(as_map, Granularity::Line, small), McError);

  CHECK_THROWS_AS(load_coverage("/nonexistent/p.info", Granularity::Line),
                  McError);
  try {
    load_coverage("/nonexistent/p.info", Granularity::Line);
  } catch (const McError& e) {
    CHECK(e.kind() == ErrorKind::IoError);
  }
}

TEST_CASE("artifact loading parses multiple granularities from one file") {
  IngestOptions opts;
  opts.strip_prefix = "/work/src";
  CoverageArtifact art = load_artifact(
      fixture_path("lcov/difference_a.info"),
      {Granularity::Line, Granularity::Branch, Granularity::Function}, opts);
  CHECK(art.maps.size() == 3);
  CHECK(art.format == ArtifactFormat::Lcov);
  // One artifact, one build: the line universe and branch universe agree on
  // the file they instrument.
  CHECK(art.maps.at(Granularity::Line).universe().begin()->file ==
        art.maps.at(Granularity::Branch).universe().begin()->file);
}
