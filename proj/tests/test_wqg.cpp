#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "periodic_homology/periodic_builder.hpp"
#include "periodic_homology/wqg.hpp"
#include "support/oracles.hpp"

using namespace periodic_homology;
using Q = Rational;

namespace {

const char* kKagome = R"({"d": 2, "vertices": ["v1", "v2", "v3"], "edges": [
  {"id": "e12", "tail": "v1", "head": "v2", "weight": [0, 0]},
  {"id": "f12", "tail": "v1", "head": "v2", "weight": [0, -1]},
  {"id": "e13", "tail": "v1", "head": "v3", "weight": [0, 0]},
  {"id": "f13", "tail": "v1", "head": "v3", "weight": [-1, 0]},
  {"id": "e23", "tail": "v2", "head": "v3", "weight": [0, 0]},
  {"id": "f23", "tail": "v2", "head": "v3", "weight": [-1, 1]}]})";

WeightedQuotientGraph single_vertex(const std::vector<ZVector>& loops) {
  std::vector<WqgEdge> edges;
  for (std::size_t i = 0; i < loops.size(); ++i) edges.push_back(WqgEdge{"a" + std::to_string(i), 0, 0, loops[i]});
  return WeightedQuotientGraph(loops.empty() ? 1 : loops[0].size(), {"v"}, edges);
}

WeightedQuotientGraph random_wqg(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist_d(1, 3), dist_v(1, 3), dist_e(0, 6), w(-1, 1);
  const std::size_t d = static_cast<std::size_t>(dist_d(rng)), nv = static_cast<std::size_t>(dist_v(rng));
  const int ne = dist_e(rng);
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < nv; ++i) vs.push_back("v" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
  std::vector<WqgEdge> es;
  for (int i = 0; i < ne; ++i) {
    ZVector wt(d);
    for (auto& x : wt) x = w(rng);
    es.push_back(WqgEdge{"e" + std::to_string(i), pick(rng), pick(rng), wt});
  }
  return WeightedQuotientGraph(d, vs, es);
}

}  // namespace

TEST_CASE("kagome connectivity and generator count") {
  const auto q = parse_wqg(std::string(kKagome));
  CHECK(betti0_periodic(q) == LatticeIndex{true, 1});
  CHECK(h1_generator_count(q) == 3);
  const auto rep = construct_generators(q);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components[0].p.size() == 2);
  CHECK(rep.components[0].ell.size() == 2);
  CHECK(rep.h1_count == 3);
}

TEST_CASE("kagome with the worked-example tree") {
  const auto q = parse_wqg(std::string(kKagome));
  GeneratorOptions opt;
  opt.tree = std::vector<std::size_t>{q.edge_index("e12"), q.edge_index("e23")};
  const auto rep = construct_generators(q, opt);
  const auto& c = rep.components[0];
  REQUIRE(c.p.size() == 2);
  REQUIRE(c.ell.size() == 2);
  CHECK(path_to_string(q, c.p[0].path) == "e12 f12^-1");
  CHECK(path_to_string(q, c.p[1].path) == "e12 e23 f13^-1");
  CHECK(path_to_string(q, c.ell[0].path) == "e12 e23 e13^-1");
  CHECK(c.p[0].weight == ZVector{0, 1});
  CHECK(c.p[1].weight == ZVector{1, 0});
  CHECK(c.ell[0].weight == ZVector{0, 0});
  CHECK(c.ell[1].weight == ZVector{1, -1});
  std::size_t shortcuts = 0;
  for (const auto& g : c.generators) {
    CHECK(path_weight(q, g.cycle) == ZVector{0, 0});
    if (g.kind == GeneratorKind::shortcut) {
      ++shortcuts;
      CHECK(g.multiplier == 1);
      CHECK(shortcut_relation_holds(q, c, g));
    }
  }
  CHECK(shortcuts == 2);
  // The f23 relation closes with p1 entering once and p2 leaving once.
  const auto& s2 = c.generators.back();
  REQUIRE(s2.kind == GeneratorKind::shortcut);
  CHECK(s2.c[0] == -1);
  CHECK(s2.c[1] == 1);
}

TEST_CASE("edges are stored with tail not after head") {
  const auto q = parse_wqg(std::string(R"({"d": 1, "vertices": ["a", "b"], "edges": [
    {"id": "x", "tail": "b", "head": "a", "weight": [2]}]})"));
  CHECK(q.edge(0).tail == 0);
  CHECK(q.edge(0).head == 1);
  CHECK(q.edge(0).weight == ZVector{-2});
}

TEST_CASE("malformed WQG documents") {
  CHECK_THROWS_AS(parse_wqg(std::string(R"({"d": 1, "vertices": ["a", "a"], "edges": []})")), Error);
  try {
    parse_wqg(std::string(R"({"d": 1, "vertices": ["a"], "edges": [{"id": "x", "tail": "a", "head": "b", "weight": [1]}]})"));
    FAIL("expected UnknownVertex");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unknown_vertex);
  }
  try {
    parse_wqg(std::string(R"({"d": 2, "vertices": ["a"], "edges": [{"id": "x", "tail": "a", "head": "a", "weight": [1]}]})"));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::dimension_mismatch);
  }
  CHECK_THROWS_AS(parse_wqg(std::string("{not json")), Error);
}

TEST_CASE("paths: weights, reversal, powers") {
  const auto q = parse_wqg(std::string(kKagome));
  const auto t = spanning_forest(q)[0];
  const auto c = fundamental_cycle(q, t, q.edge_index("f12"));
  CHECK(is_closed(q, c));
  CHECK(path_weight(q, c) == fundamental_weight(q, t, q.edge_index("f12")));
  const auto r = reversed(q, c);
  auto w = path_weight(q, r);
  for (auto& x : w) x = -x;
  CHECK(w == path_weight(q, c));
  const auto p3 = power(q, c, 3);
  CHECK(p3.steps.size() == 3 * c.steps.size());
  CHECK(power(q, c, -1).steps.size() == c.steps.size());
  CHECK(concatenate(q, c, r).steps.size() == 2 * c.steps.size());
  EdgePath open{0, {PathStep{q.edge_index("e12"), Direction::forward}}};
  CHECK_THROWS_AS(power(q, open, 2), Error);
  EdgePath broken{0, {PathStep{q.edge_index("e23"), Direction::forward}}};
  CHECK_THROWS_AS(path_end(q, broken), Error);
}

TEST_CASE("quotient cycle classification") {
  const auto q = parse_wqg(std::string(kKagome));
  const auto rep = construct_generators(q);
  const auto& c = rep.components[0];
  CHECK(classify_quotient_cycle(q, c.p[0].path) == CycleClass::toroidal);
  for (const auto& g : c.generators) CHECK(classify_quotient_cycle(q, g.cycle) == CycleClass::liftable);
}

TEST_CASE("interwoven lattices") {
  const auto B = single_vertex({{1, -1, 0}, {1, 1, -1}, {0, 0, 1}});
  CHECK(betti0_periodic(B) == LatticeIndex{true, 2});
  CHECK(h1_generator_count(B) == 3);
  std::vector<WqgEdge> es;
  const std::vector<ZVector> units{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (std::size_t v = 0; v < 2; ++v)
    for (std::size_t i = 0; i < 3; ++i) es.push_back(WqgEdge{"e" + std::to_string(3 * v + i), v, v, units[i]});
  const WeightedQuotientGraph D(3, {"u", "w"}, es);
  CHECK(betti0_periodic(D) == LatticeIndex{true, 2});
  CHECK(h1_generator_count(D) == 6);
  const auto cb = corollary_betti(D, {2, 2, 2});
  CHECK(cb.beta0 == 2);
  CHECK(cb.beta1 == 34);
}

TEST_CASE("infinite components are refused") {
  const WeightedQuotientGraph lone(1, {"v"}, {});
  CHECK_FALSE(betti0_periodic(lone).finite);
  try {
    h1_generator_count(lone);
    FAIL("expected InfiniteComponents");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::infinite_components);
  }
  CHECK_THROWS_AS(construct_generators(lone), Error);
  // Window formulas stay finite.
  CHECK(corollary_betti(lone, {3}).beta0 == 3);
}

TEST_CASE("corollary betti numbers agree with union-find on random graphs") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 80; ++t) {
    const auto q = random_wqg(rng);
    std::uniform_int_distribution<long long> n(1, 3);
    ZVector win(q.d());
    for (auto& x : win) x = n(rng);
    const auto cb = corollary_betti(q, win);
    const auto gb = oracle::graph_window_betti(q, win);
    INFO("trial " << t);
    CHECK(cb.beta0 == BigInt(static_cast<long>(gb.beta0)));
    CHECK(cb.beta1 == BigInt(static_cast<long>(gb.beta1)));
  }
}

TEST_CASE("generator lifts are cycles in windows") {
  std::mt19937_64 rng(5);
  int used = 0;
  for (int t = 0; t < 200 && used < 25; ++t) {
    const auto q = random_wqg(rng);
    if (q.edge_count() == 0 || !betti0_periodic(q).finite) continue;
    ++used;
    const auto rep = construct_generators(q);
    CHECK(static_cast<long long>([&] {
            std::size_t n = 0;
            for (const auto& c : rep.components) n += c.generators.size();
            return n;
          }()) == h1_generator_count(q));
    const auto w = build_window<Q>(from_wqg(q), ZVector(q.d(), 3));
    for (const auto& c : rep.components)
      for (const auto& g : c.generators) {
        CHECK(path_weight(q, g.cycle) == ZVector(q.d(), 0));
        CHECK(is_cycle(w.complex, 1, lift_path<Q>(q, w, g.cycle)));
      }
  }
  CHECK(used >= 10);
}
