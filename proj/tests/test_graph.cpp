#include "doctest.h"

#include <cmath>

#include "arb/dense_oracle.hpp"
#include "arb/errors.hpp"
#include "arb/graph.hpp"
#include "arb/rng.hpp"
#include "test_util.hpp"

using namespace arb;

TEST_CASE("triangle normalization: all off-diagonal entries 0.5") {
  const Graph g = Graph::build(3, {{0, 1}, {1, 2}, {0, 2}});
  for (NodeId i = 0; i < 3; ++i) {
    CHECK(g.degree(i) == 2);
    for (NodeId j = 0; j < 3; ++j)
      CHECK(g.norm_entry(i, j) == doctest::Approx(i == j ? 0.0 : 0.5));
  }
}

TEST_CASE("degree-1 pair gives the permutation matrix") {
  const Graph g = Graph::build(2, {{0, 1}});
  CHECK(g.norm_entry(0, 1) == 1.0);
  CHECK(g.norm_entry(1, 0) == 1.0);
  CHECK(g.norm_entry(0, 0) == 0.0);
}

TEST_CASE("isolated node has an all-zero row") {
  const Graph g = Graph::build(3, {{0, 1}});
  CHECK(g.degree(2) == 0);
  CHECK(g.row_ptr()[2] == g.row_ptr()[3]);
}

TEST_CASE("self-loops and duplicate edges are dropped") {
  const Graph g = Graph::build(3, {{0, 1}, {1, 0}, {0, 1}, {2, 2}});
  CHECK(g.n_edges() == 1);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(2) == 0);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Graph::build(0, {}), InputError);
  CHECK_THROWS_AS(Graph::build(2, {{0, 5}}), InputError);
}

TEST_CASE("stored entries are symmetric and match 1/sqrt(di*dj)") {
  Rng rng(7);
  const Graph g = test::random_graph(40, 120, rng);
  for (NodeId i = 0; i < 40; ++i) {
    for (std::size_t k = g.row_ptr()[i]; k < g.row_ptr()[i + 1]; ++k) {
      const NodeId j = g.col_idx()[k];
      const double expected =
          1.0 / std::sqrt(static_cast<double>(g.degree(i)) *
                          static_cast<double>(g.degree(j)));
      CHECK(g.values()[k] == doctest::Approx(expected).epsilon(1e-15));
      CHECK(g.norm_entry(j, i) == g.values()[k]);
    }
  }
}

TEST_CASE("propagate on P2 swaps rows") {
  const Graph g = Graph::build(2, {{0, 1}});
  FeatureMatrix x(2, 1);
  x.at(0, 0) = 1.0;
  const FeatureMatrix y = propagate(g, x);
  CHECK(y.at(0, 0) == 0.0);
  CHECK(y.at(1, 0) == 1.0);
}

TEST_CASE("propagate triangle impulse") {
  const Graph g = Graph::build(3, {{0, 1}, {1, 2}, {0, 2}});
  FeatureMatrix x(3, 1);
  x.at(0, 0) = 1.0;
  const FeatureMatrix y = propagate(g, x);
  CHECK(y.at(0, 0) == doctest::Approx(0.0));
  CHECK(y.at(1, 0) == doctest::Approx(0.5));
  CHECK(y.at(2, 0) == doctest::Approx(0.5));
}

TEST_CASE("propagate of zero matrix stays zero; shape mismatch rejected") {
  Rng rng(3);
  const Graph g = test::random_graph(20, 40, rng);
  const FeatureMatrix zero(20, 4);
  CHECK(propagate(g, zero) == zero);
  FeatureMatrix bad(21, 4);
  CHECK_THROWS_AS(propagate(g, bad), InputError);
}

TEST_CASE("propagate is linear") {
  Rng rng(11);
  const Graph g = test::random_graph(30, 70, rng);
  const FeatureMatrix x = test::random_features(30, 3, rng);
  const FeatureMatrix y = test::random_features(30, 3, rng);
  const double a = 1.7, b = -0.3;
  FeatureMatrix combo(30, 3);
  for (std::size_t i = 0; i < combo.data().size(); ++i)
    combo.data()[i] = a * x.data()[i] + b * y.data()[i];
  const FeatureMatrix lhs = propagate(g, combo);
  const FeatureMatrix px = propagate(g, x);
  const FeatureMatrix py = propagate(g, y);
  for (std::size_t i = 0; i < lhs.data().size(); ++i)
    CHECK(lhs.data()[i] ==
          doctest::Approx(a * px.data()[i] + b * py.data()[i])
              .epsilon(1e-12));
}

TEST_CASE("uniform-degree graph preserves the all-ones matrix") {
  // 6-cycle: every degree is 2
  const Graph g =
      Graph::build(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  FeatureMatrix ones(6, 2);
  for (double& v : ones.data()) v = 1.0;
  const FeatureMatrix y = propagate(g, ones);
  for (double v : y.data()) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("spectral radius of the normalized adjacency stays <= 1") {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const Graph g = test::random_graph(60, 150, rng);
    const auto op = [&g](const double* in, double* out) {
      FeatureMatrix x(g.n_nodes(), 1);
      for (std::size_t i = 0; i < g.n_nodes(); ++i) x.at(i, 0) = in[i];
      const FeatureMatrix y = propagate(g, x);
      for (std::size_t i = 0; i < g.n_nodes(); ++i) out[i] = y.at(i, 0);
    };
    const auto est = spectral_radius(op, g.n_nodes(), 1e-9);
    CHECK(est.value <= 1.0 + 1e-9);
  }
}

TEST_CASE("column means") {
  FeatureMatrix a(2, 1);
  a.at(0, 0) = 1.0;
  a.at(1, 0) = 3.0;
  CHECK(column_means(a)[0] == 2.0);

  FeatureMatrix b(3, 2);
  b.at(0, 0) = 1.0; b.at(0, 1) = 0.0;
  b.at(1, 0) = 0.0; b.at(1, 1) = 1.0;
  b.at(2, 0) = 2.0; b.at(2, 1) = 5.0;
  const auto m = column_means(b);
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(m[1] == doctest::Approx(2.0));

  FeatureMatrix c(4, 3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t f = 0; f < 3; ++f) c.at(i, f) = 0.25 * (f + 1);
  const auto mc = column_means(c);
  for (std::size_t f = 0; f < 3; ++f)
    CHECK(mc[f] == doctest::Approx(0.25 * (f + 1)));
}

TEST_CASE("KnownSet partitions the node range") {
  KnownSet ks(5, {3, 1, 3});
  CHECK(ks.known() == std::vector<NodeId>{1, 3});
  CHECK(ks.unknown() == std::vector<NodeId>{0, 2, 4});
  CHECK(ks.is_known(1));
  CHECK(!ks.is_known(0));
  CHECK_THROWS_AS(KnownSet(3, {5}), InputError);
}
