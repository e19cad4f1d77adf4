#include <catch2/catch_amalgamated.hpp>

#include "periodic_homology/cell_complex.hpp"

using namespace periodic_homology;
using Q = Rational;

namespace {

template <class F>
SparseMatrix<F> matrix(std::size_t rows, const std::vector<std::vector<std::pair<std::size_t, long long>>>& cols) {
  SparseMatrix<F> m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::vector<Entry<F>> c;
    for (auto [i, v] : cols[j]) c.push_back(Entry<F>{i, field_from_int<F>(v)});
    m.columns[j] = canonicalize(std::move(c));
  }
  return m;
}

// Triangle with vertices 0,1,2 and edges 01, 12, 02; optionally filled.
template <class F>
CellComplex<F> triangle(bool filled) {
  auto d1 = matrix<F>(3, {{{0, -1}, {1, 1}}, {{1, -1}, {2, 1}}, {{0, -1}, {2, 1}}});
  if (!filled) return CellComplex<F>({3, 3}, {d1});
  auto d2 = matrix<F>(3, {{{0, 1}, {1, 1}, {2, -1}}});
  return CellComplex<F>({3, 3, 1}, {d1, d2});
}

// Projective plane: one cell per dimension, boundary of the 2-cell is 2e.
template <class F>
CellComplex<F> projective_plane() {
  return CellComplex<F>({1, 1, 1}, {matrix<F>(1, {{}}), matrix<F>(1, {{{0, 2}}})});
}

}  // namespace

TEST_CASE("betti numbers of small complexes") {
  CHECK(betti_numbers(triangle<Q>(false)) == std::vector<std::size_t>{1, 1});
  CHECK(betti_numbers(triangle<Q>(true)) == std::vector<std::size_t>{1, 0, 0});
  CHECK(euler_characteristic(triangle<Q>(true)) == 1);
  CHECK(betti_numbers(CellComplex<Q>()).empty());
}

TEST_CASE("field dependence shows up on the projective plane") {
  CHECK(betti_numbers(projective_plane<Q>()) == std::vector<std::size_t>{1, 0, 0});
  CHECK(betti_numbers(projective_plane<Zp<2>>()) == std::vector<std::size_t>{1, 1, 1});
  CHECK(betti_numbers(projective_plane<Zp<3>>()) == std::vector<std::size_t>{1, 0, 0});
}

TEST_CASE("boundary squares are checked") {
  auto d1 = matrix<Q>(2, {{{0, -1}, {1, 1}}, {{0, -1}, {1, 1}}});
  auto bad = matrix<Q>(2, {{{0, 1}}});
  CHECK_THROWS_AS(CellComplex<Q>({2, 2, 1}, {d1, bad}), Error);
  CHECK_THROWS_AS(CellComplex<Q>({2, 2}, {matrix<Q>(3, {{}, {}})}), Error);
}

TEST_CASE("homology generators and decomposition") {
  const auto x = triangle<Q>(false);
  const auto h = homology(x);
  REQUIRE(h.generators[1].size() == 1);
  const auto& g = h.generators[1][0];
  CHECK(is_cycle(x, 1, g));
  const HomologyBasis<Q> basis(x, 1, h.generators[1]);
  const auto dec = basis.decompose(scaled(g, Q(3)));
  REQUIRE(dec.coordinates.size() == 1);
  CHECK(dec.coordinates[0] == 3);
  CHECK_THROWS_AS(basis.decompose(unit_vector<Q>(0)), Error);
  const HomologyBasis<Q> b0(x, 0);
  CHECK(b0.is_boundary(canonicalize<Q>({{0, Q(1)}, {2, Q(-1)}})));
  CHECK_FALSE(b0.is_boundary(unit_vector<Q>(0)));
}

TEST_CASE("decomposition returns a preimage of the boundary part") {
  const auto x = triangle<Q>(true);
  const HomologyBasis<Q> basis(x, 1);
  const Chain<Q> z = x.boundary_of(2, unit_vector<Q>(0));
  const auto dec = basis.decompose(z);
  CHECK(dec.coordinates.empty());
  CHECK(equal(x.boundary_of(2, dec.preimage), z));
}

TEST_CASE("class membership and homology rank") {
  const auto x = triangle<Q>(false);
  const auto g = homology_generators(x, 1);
  CHECK(class_membership(x, 1, scaled(g[0], Q(-2)), g));
  CHECK_FALSE(class_membership(x, 1, g[0], {}));
  CHECK(homology_rank(x, 1, {g[0], scaled(g[0], Q(5))}) == 1);
  CHECK_THROWS_AS(class_membership(x, 1, unit_vector<Q>(0), g), Error);
}

TEST_CASE("induced maps") {
  const auto x = triangle<Q>(false);
  ChainMap<Q> id{{SparseMatrix<Q>::identity(3), SparseMatrix<Q>::identity(3)}};
  CHECK(is_chain_map(id, x, x));
  const auto m = induced_map(id, x, x, 1);
  REQUIRE(m.cols == 1);
  CHECK(m.columns[0].size() == 1);
  // Collapsing one edge without moving vertices is not a chain map.
  ChainMap<Q> bad = id;
  bad.maps[1].columns[0].clear();
  CHECK_FALSE(is_chain_map(bad, x, x));
  CHECK_THROWS_AS(induced_map(bad, x, x, 1), Error);
}

TEST_CASE("kernel and rank of sparse matrices") {
  auto a = matrix<Q>(2, {{{0, 1}}, {{1, 1}}, {{0, 1}, {1, 1}}});
  CHECK(rank(a) == 2);
  const auto k = kernel(a);
  REQUIRE(k.size() == 1);
  CHECK(periodic_homology::apply(a, k[0]).empty());
}
