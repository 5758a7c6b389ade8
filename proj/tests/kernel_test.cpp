#include <gtest/gtest.h>

#include <random>

#include "relaxpart/kernel.hpp"
#include "relaxpart/relaxation.hpp"
#include "testkit/testkit.hpp"

namespace rp = relaxpart;
namespace tk = relaxpart::testkit;
using rp::ExpansionScheme;

TEST(Kernel, TripleExample) {
  auto h = tk::fixture("hyper_triple").graph;
  auto scaled = rp::expand(h, ExpansionScheme::CliqueScaled);
  EXPECT_DOUBLE_EQ(scaled.at(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(scaled.at(2, 0), 0.5);
  EXPECT_DOUBLE_EQ(scaled.at(0, 3), 0.0);
  EXPECT_EQ(scaled.nnz(), 6u);
  auto uniform = rp::expand(h, ExpansionScheme::CliqueUniform);
  EXPECT_DOUBLE_EQ(uniform.at(1, 2), 1.0);
}

TEST(Kernel, ParallelEdgesSum) {
  auto h = rp::Hypergraph::from_edges(3, {{0, 1}, {0, 1}, {0, 1, 2}}, {1.0, 2.0, 4.0});
  auto g = rp::expand(h);
  EXPECT_DOUBLE_EQ(g.at(0, 1), 1.0 + 2.0 + 2.0);
  EXPECT_DOUBLE_EQ(g.at(1, 2), 2.0);
}

TEST(Kernel, MatchesDenseOracle) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto h = tk::random_hypergraph(12, 20, 5, s);
    for (auto scheme : {ExpansionScheme::CliqueUniform, ExpansionScheme::CliqueScaled}) {
      auto g = rp::expand(h, scheme);
      auto dense = tk::dense_kernel(h, scheme);
      auto got = tk::to_dense(g);
      for (std::size_t i = 0; i < 12; ++i) {
        EXPECT_EQ(got[i][i], 0.0);
        for (std::size_t j = 0; j < 12; ++j) {
          EXPECT_NEAR(got[i][j], dense[i][j], 1e-14);
          EXPECT_EQ(got[i][j], got[j][i]);
        }
      }
      auto d = rp::degree_vector(g);
      auto dd = tk::dense_row_sums(dense);
      for (std::size_t i = 0; i < 12; ++i) EXPECT_NEAR(d[i], dd[i], 1e-13);
    }
  }
}

TEST(Kernel, CutConsistencyGraphs) {
  std::mt19937_64 rng(1);
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto h = tk::random_connected_graph(10, 20, s);
    auto g = rp::expand(h);
    std::vector<double> f(10);
    std::vector<rp::BlockId> a(10);
    for (std::size_t i = 0; i < 10; ++i) {
      a[i] = static_cast<rp::BlockId>(rng() & 1);
      f[i] = a[i] == 0 ? 1.0 : 0.0;
    }
    EXPECT_EQ(rp::objective(g, f), tk::recount_cut_net(h, a));
  }
}

TEST(Kernel, CutConsistencyHypergraphs) {
  std::mt19937_64 rng(2);
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto h = tk::random_hypergraph(14, 20, 6, s);
    std::vector<double> f(14);
    std::vector<int> side(14);
    for (std::size_t i = 0; i < 14; ++i) {
      side[i] = static_cast<int>(rng() & 1);
      f[i] = side[i];
    }
    for (auto scheme : {ExpansionScheme::CliqueUniform, ExpansionScheme::CliqueScaled}) {
      const double want = tk::clique_cut(h, side, scheme);
      EXPECT_NEAR(rp::objective(rp::expand(h, scheme), f), want, 1e-12 * std::max(1.0, want));
    }
    // every cut hyperedge has at least one straddling pair of weight w_e
    std::vector<rp::BlockId> a(side.begin(), side.end());
    EXPECT_LE(tk::recount_cut_net(h, a), tk::clique_cut(h, side, ExpansionScheme::CliqueUniform) + 1e-12);
  }
}

TEST(Kernel, MatrixMarket) {
  auto g = rp::expand(tk::fixture("path4").graph);
  EXPECT_EQ(rp::write_matrix_market(g),
            "%%MatrixMarket matrix coordinate real symmetric\n4 4 3\n2 1 1\n3 2 1\n4 3 1\n");
}

TEST(Kernel, ThreadCountIndependent) {
  auto h = tk::random_hypergraph(3000, 6000, 6, 9);
  auto g = rp::expand(h);
  std::vector<double> x(3000);
  std::mt19937_64 rng(4);
  for (double& v : x) v = tk::uniform01(rng);
  std::vector<double> y1(3000), y4(3000);
  g.multiply(x, y1, 1);
  g.multiply(x, y4, 4);
  EXPECT_EQ(y1, y4);
}

TEST(Kernel, NormInf) {
  auto g = rp::expand(tk::fixture("barbell6").graph);
  EXPECT_DOUBLE_EQ(g.norm_inf(), 3.0);
}
