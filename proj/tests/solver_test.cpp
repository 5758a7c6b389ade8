#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "relaxpart/recursive.hpp"
#include "relaxpart/solver.hpp"
#include "testkit/testkit.hpp"

namespace rp = relaxpart;
namespace tk = relaxpart::testkit;

namespace {

rp::RelaxationProblem problem_for(const rp::Hypergraph& h, double eps = 0.02) {
  return rp::make_problem(h, rp::expand(h), eps, 0.05);
}

double certificate_bound(const rp::RelaxationProblem& p) { return 1e-4 * (1.0 + p.G.norm_inf()); }

}  // namespace

TEST(Solver, K2SeparatesEndpoints) {
  auto p = problem_for(tk::fixture("K2").graph);
  auto s = rp::solve(p);
  ASSERT_TRUE(s.converged);
  // near the line f0 + f1 = 1 the objective is 1 - <f, a - f>, so it sits on the overlap bound
  EXPECT_NEAR(s.objective_value, 1.0 - 2 * 0.05 * p.C, 1e-3);
  EXPECT_LE(s.stationarity_norm, certificate_bound(p));
  auto b = rp::sweep_round(tk::fixture("K2").graph, s.f, 0.05);
  EXPECT_TRUE(b.feasible);
  EXPECT_EQ(b.cut, 1.0);
}

TEST(Solver, BarbellFindsBridge) {
  const auto& h = tk::fixture("barbell6").graph;
  auto p = problem_for(h);
  auto s = rp::solve(p);
  EXPECT_TRUE(s.converged);
  EXPECT_EQ(rp::sweep_round(h, s.f, 0.05).cut, rp::brute_force_bisect(h, 0.05).cut);
  // strictly better than the trivial critical point a/2
  std::vector<double> half(6, 0.5);
  EXPECT_LT(s.objective_value, tk::dense_objective(tk::dense_kernel(h, rp::ExpansionScheme::CliqueScaled), half));
}

TEST(Solver, DisconnectedComponentsGiveZeroCut) {
  const auto& h = tk::fixture("two_triangles_disjoint").graph;
  auto s = rp::solve(problem_for(h));
  EXPECT_EQ(rp::sweep_round(h, s.f, 0.05).cut, 0.0);
}

TEST(Solver, IteratesStayInBox) {
  auto h = tk::random_hypergraph(40, 80, 5, 2);
  rp::SolverConfig cfg;
  std::size_t calls = 0;
  bool inside = true;
  cfg.on_iterate = [&](std::size_t, std::span<const double> f) {
    ++calls;
    for (double x : f) inside = inside && x >= 0.0 && x <= 1.0;
  };
  auto s = rp::solve(problem_for(h), cfg);
  EXPECT_TRUE(inside);
  EXPECT_EQ(calls, s.trace.size());
  for (double x : s.f) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 1.0);
  }
}

TEST(Solver, MeritDecreasesWithinEachRound) {
  auto h = tk::random_hypergraph(30, 60, 4, 5);
  auto p = problem_for(h);
  auto s = rp::solve(p);
  ASSERT_FALSE(s.trace.empty());
  for (std::size_t i = 1; i < s.trace.size(); ++i)
    if (s.trace[i].outer == s.trace[i - 1].outer) EXPECT_LE(s.trace[i].merit, s.trace[i - 1].merit);
  EXPECT_NEAR(s.objective_value, rp::objective(p.G, s.f), 1e-12);
  EXPECT_EQ(s.iterations, s.trace.back().iteration);
}

TEST(Solver, InitKinds) {
  const auto& h = tk::fixture("barbell6").graph;
  auto p = problem_for(h);
  rp::SolverConfig cfg;
  cfg.init = rp::InitKind::Random;
  cfg.seed = 3;
  auto r = rp::solve(p, cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_FALSE(r.spectral_fell_back);
  cfg.init = rp::InitKind::Warm;
  cfg.warm_start = {1.0, 1.0, 1.0, 0.0, 0.0, 0.0};
  auto w = rp::solve(p, cfg);
  EXPECT_EQ(rp::sweep_round(h, w.f, 0.05).cut, 1.0);
  cfg.warm_start = {1.0};
  EXPECT_THROW(rp::solve(p, cfg), std::invalid_argument);
}

TEST(Solver, Deterministic) {
  auto p = problem_for(tk::random_hypergraph(60, 150, 5, 8));
  rp::SolverConfig cfg;
  cfg.seed = 17;
  auto a = rp::solve(p, cfg);
  auto b = rp::solve(p, cfg);
  EXPECT_EQ(a.f, b.f);
  EXPECT_EQ(rp::trace_csv(a.trace), rp::trace_csv(b.trace));
  cfg.threads = 3;
  auto c = rp::solve(p, cfg);
  EXPECT_EQ(a.f, c.f);
}

TEST(Solver, EscapesHalfPoint) {
  const auto& h = tk::fixture("barbell6").graph;
  auto p = problem_for(h);
  std::vector<double> half(6, 0.5);
  const double trivial = tk::dense_objective(tk::to_dense(p.G), half);
  for (auto init : {rp::InitKind::Spectral, rp::InitKind::Random, rp::InitKind::Warm}) {
    rp::SolverConfig cfg;
    cfg.init = init;
    cfg.warm_start = half;
    auto s = rp::solve(p, cfg);
    EXPECT_LT(s.objective_value, trivial) << static_cast<int>(init);
  }
}

TEST(Solver, NonFiniteKernelThrows) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rp::KernelMatrix g(2, {0, 1, 2}, {1, 0}, {nan, nan});
  rp::RelaxationProblem p;
  p.G = g;
  p.C = 1;
  p.eps_balance = 0.02;
  p.eps_disjoint = 0.05;
  rp::SolverConfig cfg;
  cfg.init = rp::InitKind::Random;
  EXPECT_THROW(rp::solve(p, cfg), rp::NumericalError);
}

TEST(Solver, IterationCapReported) {
  auto p = problem_for(tk::random_hypergraph(50, 120, 5, 1));
  rp::SolverConfig cfg;
  cfg.max_iterations = 1;
  auto s = rp::solve(p, cfg);
  EXPECT_FALSE(s.converged);
  EXPECT_LE(s.iterations, 1u);
}

TEST(Solver, TraceCsv) {
  auto s = rp::solve(problem_for(tk::fixture("path4").graph));
  const std::string csv = rp::trace_csv(s.trace);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "iteration,objective,disjointness_residual,balance_residual,stationarity_norm,step_size");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), s.trace.size() + 1);
}

TEST(Solver, CertificateOnConvergedSolves) {
  std::size_t converged = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto h = tk::random_connected_graph(8 + seed % 10, 20 + seed, seed);
    auto p = problem_for(h);
    auto s = rp::solve(p);
    if (!s.converged) continue;
    ++converged;
    EXPECT_LE(rp::kkt_residual_norm(p, s.f, s.lambda, s.mu), certificate_bound(p)) << seed;
    EXPECT_GE(s.lambda, 0.0);
  }
  EXPECT_GT(converged, 25u);
}
