#include "cubiph/boundary.hpp"
#include "cubiph/oracle.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace cubiph;

TEST_SUITE("boundary") {

TEST_CASE("worked example reproduces the printed 9x9 matrix") {
  const BoundaryMatrix b = build_boundary_matrix(fixtures::example_filtration());
  CHECK(b.dense() == fixtures::kExampleB);
  // printed column 9 has rows {4,5,7,8}; column 5 has rows {1,3} (1-based)
  const auto col9 = b.column(8);
  CHECK(std::vector<Rank>(col9.begin(), col9.end()) == std::vector<Rank>{3, 4, 6, 7});
  const auto col5 = b.column(4);
  CHECK(std::vector<Rank>(col5.begin(), col5.end()) == std::vector<Rank>{0, 2});
}

TEST_CASE("small images") {
  const auto single = build_boundary_matrix(build_filtration(build_cubical_complex(GreyImage::from_rows({{0.3}}))));
  CHECK(single.size() == 1);
  CHECK(single.nonzeros() == 0);

  const auto f = build_filtration(build_cubical_complex(GreyImage::from_rows({{0.1, 0.6}})));
  const auto pair = build_boundary_matrix(f);
  REQUIRE(pair.size() == 3);
  const Rank edge = f.rank(1);
  const auto col = pair.column(edge);
  CHECK(std::vector<Rank>(col.begin(), col.end()) == std::vector<Rank>{f.rank(0), f.rank(2)});

  const CellGraph g = symmetrize(pair);
  CHECK(g.edges.size() == 2);
  CHECK(g.degree(edge) == 2);
  CHECK(g.degree(f.rank(0)) == 1);
  CHECK(g.degree(f.rank(2)) == 1);
}

TEST_CASE("structural invariants on random images") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto img = oracle::random_image(rng, 1 + rng() % 7, 1 + rng() % 7, 4);
    const auto f = build_filtration(build_cubical_complex(img));
    const auto b = build_boundary_matrix(f);
    const auto& cc = f.complex();
    CHECK(b.nonzeros() == 2 * cc.count_of_dimension(1) + 4 * cc.count_of_dimension(2));

    const std::size_t expected_entries[] = {0, 2, 4};
    for (Rank j = 0; j < b.size(); ++j) {
      const auto col = b.column(j);
      CHECK(col.size() == expected_entries[b.cell_dim(j)]);
      CHECK(std::is_sorted(col.begin(), col.end()));
      for (Rank i : col) {
        CHECK(i < j);
        CHECK(b.cell_dim(i) == b.cell_dim(j) - 1);
      }
    }

    // d o d = 0: the faces-of-faces of a square cancel in pairs
    for (Rank j = 0; j < b.size(); ++j) {
      if (b.cell_dim(j) != 2)
        continue;
      std::vector<int> parity(b.size(), 0);
      for (Rank e : b.column(j))
        for (Rank v : b.column(e))
          parity[v] ^= 1;
      CHECK(std::all_of(parity.begin(), parity.end(), [](int p) { return p == 0; }));
    }

    const auto sym = symmetrize(b);
    CHECK(sym.edges == symmetrize(b.transposed()).edges);
    CHECK(sym.edges.size() == b.nonzeros());
    for (const auto& e : sym.edges) {
      CHECK(e.src != e.dst);
      CHECK((b.entry(static_cast<Rank>(e.src), static_cast<Rank>(e.dst)) ||
             b.entry(static_cast<Rank>(e.dst), static_cast<Rank>(e.src))));
    }
  }
}

TEST_CASE("symmetrized worked example: the square has degree 4") {
  const auto g = symmetrize(build_boundary_matrix(fixtures::example_filtration()));
  CHECK(g.n == 9);
  CHECK(g.degree(8) == 4);
  CHECK(g.edges.size() == 12);
}

TEST_CASE("edgeless graph from a zero matrix") {
  const auto f = build_filtration(build_cubical_complex(GreyImage::from_rows({{0.5}})));
  CHECK(symmetrize(build_boundary_matrix(f)).edges.empty());
}

TEST_CASE("CC graph") {
  const auto cc = build_cubical_complex(fixtures::example_image());
  const auto g = export_cc_graph(cc);
  CHECK(g.n == 3);
  REQUIRE(g.edges.size() == 9);
  for (const auto& e : g.edges)
    CHECK(e.weight == cc.value(e.src, e.dst));

  const auto zero = export_cc_graph(build_cubical_complex(GreyImage(2, 2, std::vector<double>(4, 0.0))));
  CHECK(zero.n == 3);
  CHECK(zero.edges.empty());

  const auto one = export_cc_graph(build_cubical_complex(GreyImage::from_rows({{0.25}})));
  CHECK(one.n == 1);
  REQUIRE(one.edges.size() == 1);
  CHECK(one.edges[0] == GraphEdge{0, 0, 0.25});

  const auto wide = export_cc_graph(build_cubical_complex(GreyImage(3, 1, {0.1, 0.2, 0.3})));
  CHECK(wide.n == 5);
}

TEST_CASE("FCC adjacency A(i,j) = E_flat(F(i,j))") {
  const auto f = fixtures::example_filtration();
  const auto a = fcc_adjacency(f.complex(), f);
  CHECK(a[0] == 1.0); // F(1,1)=1 -> E_flat(1)
  CHECK(a[8] == 3.0); // F(3,3)=2 -> E_flat(2)
  // F(2,2)=9 -> E_flat(9) = 2
  CHECK(a[4] == 2.0);
  const auto g = export_fcc_graph(f.complex(), f);
  CHECK(g.n == 3);
  CHECK(g.edges.size() == 9);

  const auto constant = build_filtration(build_cubical_complex(GreyImage(3, 3, std::vector<double>(9, 0.4))));
  for (double v : fcc_adjacency(constant.complex(), constant))
    CHECK(v == 0.4);
}

TEST_CASE("FCC adjacency under the identity order and in general") {
  // A 1x1 complex is the only one whose row-major order is itself a filtration.
  const auto cc = build_cubical_complex(GreyImage::from_rows({{0.5}}));
  const auto f = build_filtration(cc, OrderPolicy::explicit_order({1}));
  CHECK(fcc_adjacency(cc, f) == cc.values());

  std::mt19937_64 rng(2);
  const auto big = build_cubical_complex(oracle::random_image(rng, 3, 4, 3));
  const auto canon = build_filtration(big);
  const auto a = fcc_adjacency(big, canon);
  const auto ranks = canon.rank_matrix();
  for (std::size_t cell = 0; cell < big.size(); ++cell)
    CHECK(a[cell] == big.values()[ranks[cell] - 1]);
}

TEST_CASE("rank node features") {
  const auto f = fixtures::example_filtration();
  auto g = symmetrize(build_boundary_matrix(f));
  attach_rank_node_features(g, f);
  REQUIRE(g.node_features.size() == 9);
  CHECK(g.node_features[0] == NodeFeature{0, 1.0, 1});
  CHECK(g.node_features[8] == NodeFeature{2, 3.0, 9});
}

} // TEST_SUITE
