#include <gtest/gtest.h>

#include <cmath>

#include "relaxpart/recursive.hpp"
#include "testkit/testkit.hpp"

namespace rp = relaxpart;
namespace tk = relaxpart::testkit;

namespace {

// Exhaustive k-way minimum cut-net under is_balanced.
double brute_kway(const rp::Hypergraph& h, rp::BlockId k, double eps) {
  const std::size_t n = h.num_vertices();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= k;
  double best = std::numeric_limits<double>::infinity();
  rp::Partition p{std::vector<rp::BlockId>(n), k};
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= k) p.assignment[i] = static_cast<rp::BlockId>(c % k);
    if (!rp::is_balanced(h, p, eps)) continue;
    best = std::min(best, tk::recount_cut_net(h, p.assignment));
  }
  return best;
}

}  // namespace

TEST(Recursive, LevelEps) {
  EXPECT_DOUBLE_EQ(rp::level_eps(0.1, 2), 0.1);
  EXPECT_NEAR(rp::level_eps(0.1, 4), std::sqrt(1.1) - 1.0, 1e-15);
  EXPECT_NEAR(rp::level_eps(0.1, 3), std::sqrt(1.1) - 1.0, 1e-15);
  EXPECT_NEAR(rp::level_eps(0.1, 5), std::cbrt(1.1) - 1.0, 1e-15);
  EXPECT_NEAR(std::pow(1 + rp::level_eps(0.03, 8), 3), 1.03, 1e-14);
}

TEST(Recursive, TwoWayEqualsBisect) {
  auto h = tk::random_hypergraph(30, 60, 5, 4);
  rp::PipelineOptions opts;
  auto k2 = rp::recursive_bisect(h, 2, opts);
  auto one = rp::bisect(h, opts);
  EXPECT_EQ(k2.partition.assignment, one.bisection.partition.assignment);
  EXPECT_EQ(k2.bisections, 1u);
}

TEST(Recursive, FourWayOnTwoCliques) {
  const auto& h = tk::fixture("k4_pair").graph;
  rp::PipelineOptions opts;
  opts.eps = 0.05;
  auto r = rp::recursive_bisect(h, 4, opts);
  EXPECT_TRUE(r.feasible);
  EXPECT_TRUE(rp::is_balanced(h, r.partition, 0.05));
  const double oracle = brute_kway(h, 4, 0.05);
  const double got = rp::cut_metrics(h, r.partition).cut_net;
  EXPECT_GE(got, oracle);
  EXPECT_EQ(got, oracle);
}

TEST(Recursive, ExactThirds) {
  auto h = tk::random_hypergraph(12, 24, 4, 3);
  rp::PipelineOptions opts;
  opts.eps = 0.0;
  auto r = rp::recursive_bisect(h, 3, opts);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(rp::block_weights(h, r.partition), (std::vector<rp::Weight>{4, 4, 4}));
}

TEST(Recursive, ParallelMatchesSerial) {
  auto h = tk::random_hypergraph(120, 300, 5, 12);
  rp::PipelineOptions opts;
  opts.solver.seed = 5;
  auto serial = rp::recursive_bisect(h, 5, opts);
  opts.parallel_branches = true;
  auto parallel = rp::recursive_bisect(h, 5, opts);
  EXPECT_EQ(serial.partition, parallel.partition);
  EXPECT_EQ(serial.bisections, parallel.bisections);
}

TEST(Recursive, FeasibleMeansBalanced) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto h = tk::random_hypergraph(40, 90, 5, s);
    for (std::size_t k : {3, 4, 6}) {
      auto r = rp::recursive_bisect(h, k, {});
      if (r.feasible) EXPECT_TRUE(rp::is_balanced(h, r.partition, 0.02));
      EXPECT_EQ(r.partition.k, k);
    }
  }
}

TEST(Recursive, Errors) {
  const auto& h = tk::fixture("path4").graph;
  EXPECT_THROW(rp::recursive_bisect(h, 1, {}), std::invalid_argument);
  EXPECT_THROW(rp::recursive_bisect(h, 5, {}), std::invalid_argument);
  rp::PipelineOptions bad;
  bad.eps = -1;
  EXPECT_THROW(rp::recursive_bisect(h, 2, bad), std::invalid_argument);
}
