#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <functional>
#include <sstream>

#include "periodic_homology/periodic_builder.hpp"
#include "support/oracles.hpp"

using namespace periodic_homology;
using Q = Rational;

namespace {

std::string data(const std::string& name) { return std::string(PH_DATA_DIR) + "/" + name; }

PeriodicComplexTemplate load(const std::string& name) {
  std::ifstream in(data(name));
  std::stringstream ss;
  ss << in.rdbuf();
  const auto doc = nlohmann::json::parse(ss.str());
  if (doc.contains("vertices")) return from_wqg(parse_wqg(doc));
  return parse_template(doc);
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::invalid_argument;
}

}  // namespace

TEST_CASE("sample templates validate") {
  for (const auto* f : {"point.template.json", "circle.template.json", "torus.template.json", "planes.template.json",
                        "kagome.wqg.json", "interwoven_B.wqg.json", "interwoven_D.wqg.json"}) {
    INFO(f);
    CHECK(validate_template(load(f)).ok);
  }
}

TEST_CASE("a corrupted coefficient is reported with its cell pair") {
  const auto t = load("corrupted_torus.template.json");
  const auto r = validate_template(t);
  REQUIRE_FALSE(r.ok);
  for (const auto& v : r.violations) {
    CHECK(v.cell == "s");
    CHECK(v.face == "v");
  }
  CHECK(r.describe().find("'s'") != std::string::npos);
  CHECK(kind_of([&] { require_valid(t); }) == ErrorKind::boundary_square_nonzero);
  CHECK(kind_of([&] { build_window<Q>(t, {2, 2}); }) == ErrorKind::boundary_square_nonzero);
}

TEST_CASE("template parse errors") {
  CHECK(kind_of([] {
          parse_template(std::string(R"({"d": 1, "cells": [{"id": "e", "dim": 1, "boundary": [{"face": "v", "coeff": 1, "shift": [0]}]}]})"));
        }) == ErrorKind::dangling_face);
  CHECK(kind_of([] {
          parse_template(std::string(R"({"d": 1, "cells": [{"id": "v", "dim": 0, "boundary": []},
            {"id": "e", "dim": 1, "boundary": [{"face": "v", "coeff": 1, "shift": [0, 0]}]}]})"));
        }) == ErrorKind::dimension_error);
  CHECK(kind_of([] {
          parse_template(std::string(R"({"d": 1, "cells": [{"id": "v", "dim": 0, "boundary": []},
            {"id": "s", "dim": 2, "boundary": [{"face": "v", "coeff": 1, "shift": [0]}]}]})"));
        }) == ErrorKind::dimension_error);
  CHECK(kind_of([] { parse_template(std::string(R"({"d": 1})")); }) == ErrorKind::parse_error);
}

TEST_CASE("offset bound") {
  CHECK(offset_bound(load("planes.template.json")) == 1);
  CHECK(offset_bound(load("point.template.json")) == 0);
}

TEST_CASE("periodic windows match the dense oracle") {
  const std::vector<std::pair<std::string, std::vector<ZVector>>> cases = {
      {"circle.template.json", {{1}, {2}, {5}}},
      {"torus.template.json", {{1, 1}, {2, 3}, {4, 4}}},
      {"planes.template.json", {{1, 1, 1}, {2, 1, 3}, {3, 3, 3}, {4, 4, 4}}},
      {"kagome.wqg.json", {{1, 1}, {2, 3}, {3, 3}}},
      {"interwoven_B.wqg.json", {{1, 2, 3}, {2, 2, 2}}},
  };
  for (const auto& [f, wins] : cases) {
    const auto t = load(f);
    for (const auto& n : wins) {
      INFO(f << " n=" << n.size());
      CHECK(betti_numbers(build_window<Q>(t, n).complex) == oracle::window_betti(t, n));
    }
  }
}

TEST_CASE("planes and torus reference values") {
  const auto planes = load("planes.template.json");
  CHECK(betti_numbers(build_window<Q>(planes, {4, 4, 4}).complex) == std::vector<std::size_t>{1, 18, 17});
  CHECK(betti_numbers(build_window<Q>(load("torus.template.json"), {1, 1}).complex) ==
        std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("truncated windows") {
  const auto planes = load("planes.template.json");
  const auto y = build_window<Q>(planes, {4, 4, 4}, Flavor::truncated);
  // Eight contractible sheets meeting along sixteen segments: a K_{4,4} pattern.
  CHECK(betti_numbers(y.complex) == std::vector<std::size_t>{1, 9, 0});
  CHECK(betti_numbers(build_window<Q>(load("torus.template.json"), {3, 2}, Flavor::truncated).complex) ==
        std::vector<std::size_t>{1, 0, 0});
  const auto line = build_window<Q>(load("circle.template.json"), {4}, Flavor::truncated);
  CHECK(line.complex.cell_counts() == std::vector<std::size_t>{5, 4});
  CHECK(betti_numbers(line.complex) == std::vector<std::size_t>{1, 0});
  CHECK_THROWS_AS(y.translate(0, {}, {1, 0, 0}), Error);
}

TEST_CASE("window sizes are checked") {
  const auto t = load("torus.template.json");
  CHECK_THROWS_AS(build_window<Q>(t, {2}), Error);
  CHECK_THROWS_AS(build_window<Q>(t, {0, 2}), Error);
}

TEST_CASE("covering projections") {
  const auto t = load("torus.template.json");
  const auto big = build_window<Q>(t, {4, 2});
  const auto small = build_window<Q>(t, {2, 2});
  const auto f = covering_projection(big, small);
  CHECK(is_chain_map(f, big.complex, small.complex));
  const auto h = induced_map(f, big.complex, small.complex, 0);
  CHECK(h.columns[0].size() == 1);
  CHECK(kind_of([&] { covering_projection(big, build_window<Q>(t, {3, 2})); }) == ErrorKind::divisibility_error);
}

TEST_CASE("translations permute cells") {
  const auto w = build_window<Q>(load("torus.template.json"), {3, 3});
  const auto c = unit_vector<Q>(w.index_of(1, 1, {0, 0}));
  const auto moved = w.translate(1, c, {2, 1});
  REQUIRE(moved.size() == 1);
  CHECK(w.labels[1][moved[0].index].shift == ZVector{2, 1});
  CHECK(w.translate(1, moved, {1, 2})[0].index == c[0].index);
}

TEST_CASE("WQG conversion round-trips through JSON") {
  const auto t = load("kagome.wqg.json");
  const auto again = parse_template(template_to_json(t).dump());
  CHECK(again.cell_count() == t.cell_count());
  CHECK(betti_numbers(build_window<Q>(again, {2, 3}).complex) == betti_numbers(build_window<Q>(t, {2, 3}).complex));
}

TEST_CASE("prime field windows") {
  const auto planes = load("planes.template.json");
  CHECK(betti_numbers(build_window<Zp<46337>>(planes, {3, 3, 3}).complex) ==
        betti_numbers(build_window<Q>(planes, {3, 3, 3}).complex));
}
