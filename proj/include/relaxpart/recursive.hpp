#ifndef RELAXPART_RECURSIVE_HPP
#define RELAXPART_RECURSIVE_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "relaxpart/kernel.hpp"
#include "relaxpart/rounding.hpp"
#include "relaxpart/solver.hpp"

namespace relaxpart {

struct PipelineOptions {
  double eps = 0.02;           // final block balance; also the solver's balance tolerance as a fraction of C
  double eps_disjoint = 0.05;
  ExpansionScheme scheme = ExpansionScheme::CliqueScaled;
  SolverConfig solver;
  bool parallel_branches = false;  // bisect the two halves of a level concurrently
};

struct BisectionOutcome {
  Bisection bisection;
  ContinuousSolution solution;
  double solve_ms = 0;
};

/// expand -> solve -> sweep_round for one bisection whose side 0 should carry
/// `blocks0` of `blocks0 + blocks1` final blocks.
inline BisectionOutcome bisect(const Hypergraph& h, const PipelineOptions& options, std::size_t blocks0 = 1,
                               std::size_t blocks1 = 1) {
  const Weight total = h.total_vertex_weight();
  const auto target = BisectionTarget::proportional(total, blocks0, blocks1, options.eps);
  BisectionOutcome out;
  if (h.num_vertices() < 2 || !(total > 0)) {
    const std::vector<double> flat(h.num_vertices(), 0.0);
    out.bisection = sweep_round(h, flat, target);
    out.solution.f = flat;
    out.solution.converged = true;
    return out;
  }
  const double share = static_cast<double>(blocks0) / static_cast<double>(blocks0 + blocks1);
  auto problem = make_problem(h, expand(h, options.scheme), options.eps, options.eps_disjoint, share);
  const auto start = std::chrono::steady_clock::now();
  out.solution = solve(problem, options.solver);
  out.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.bisection = sweep_round(h, out.solution.f, target);
  return out;
}

/// Per-level tolerance so that ceil(log2 k) nested levels compose to eps.
inline double level_eps(double eps, std::size_t k) {
  const double levels = std::ceil(std::log2(static_cast<double>(k)));
  return levels <= 1 ? eps : std::pow(1.0 + eps, 1.0 / levels) - 1.0;
}

struct KWayResult {
  Partition partition;
  bool feasible = false;        // every level admissible and is_balanced(h, p, eps) holds
  ContinuousSolution root;      // relaxation of the top-level bisection
  double solve_ms = 0;          // summed over all solve() calls
  std::size_t bisections = 0;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct RecursionState {
  std::mutex lock;
  bool feasible = true;
  double solve_ms = 0;
  std::size_t bisections = 0;
  ContinuousSolution root;
};

// Block ids [first_block, first_block + k) go to the vertices `ids` of h.
inline void recurse(const Hypergraph& sub, const std::vector<Index>& ids, std::size_t k, BlockId first_block,
                    const PipelineOptions& options, bool is_root, std::vector<BlockId>& assignment,
                    RecursionState& state) {
  if (k == 1 || sub.num_vertices() == 0) {
    for (Index v : ids) assignment[v] = first_block;
    return;
  }
  const std::size_t k0 = (k + 1) / 2;
  const std::size_t k1 = k / 2;
  PipelineOptions level = options;
  if (!is_root)
    level.solver.seed = mix_seed(options.solver.seed, first_block, k);
  auto outcome = bisect(sub, level, k0, k1);
  {
    std::lock_guard guard(state.lock);
    state.feasible = state.feasible && outcome.bisection.feasible;
    state.solve_ms += outcome.solve_ms;
    ++state.bisections;
    if (is_root) state.root = std::move(outcome.solution);
  }
  std::vector<Index> local0, local1, ids0, ids1;
  for (Index v = 0; v < sub.num_vertices(); ++v) {
    if (outcome.bisection.partition.assignment[v] == 0) {
      local0.push_back(v);
      ids0.push_back(ids[v]);
    } else {
      local1.push_back(v);
      ids1.push_back(ids[v]);
    }
  }
  if (k0 == 1 && k1 == 1) {
    for (Index v : ids0) assignment[v] = first_block;
    for (Index v : ids1) assignment[v] = first_block + 1;
    return;
  }
  const Hypergraph sub0 = sub.induced(local0);
  const Hypergraph sub1 = sub.induced(local1);
  const auto first1 = static_cast<BlockId>(first_block + k0);
  if (options.parallel_branches) {
    auto left = std::async(std::launch::async, [&] {
      recurse(sub0, ids0, k0, first_block, options, false, assignment, state);
    });
    recurse(sub1, ids1, k1, first1, options, false, assignment, state);
    left.get();
  } else {
    recurse(sub0, ids0, k0, first_block, options, false, assignment, state);
    recurse(sub1, ids1, k1, first1, options, false, assignment, state);
  }
}

}  // namespace detail

/// k-way partition by recursive bisection. k splits as ceil(k/2) + floor(k/2)
/// with proportional side targets, and each level uses level_eps(eps, k).
/// Blocks of a branch are numbered contiguously, so the result does not
/// depend on the order in which branches finish.
inline KWayResult recursive_bisect(const Hypergraph& h, std::size_t k, const PipelineOptions& options) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (options.eps < 0) throw std::invalid_argument("eps must be nonnegative");
  if (h.total_vertex_weight() < static_cast<double>(k))
    throw std::invalid_argument("total vertex weight must be at least k");
  PipelineOptions level = options;
  level.eps = level_eps(options.eps, k);
  KWayResult out;
  out.partition.k = static_cast<BlockId>(k);
  out.partition.assignment.assign(h.num_vertices(), 0);
  std::vector<Index> ids(h.num_vertices());
  for (Index v = 0; v < h.num_vertices(); ++v) ids[v] = v;
  detail::RecursionState state;
  detail::recurse(h, ids, k, 0, level, true, out.partition.assignment, state);
  out.feasible = state.feasible && is_balanced(h, out.partition, options.eps);
  out.root = std::move(state.root);
  out.solve_ms = state.solve_ms;
  out.bisections = state.bisections;
  return out;
}

}  // namespace relaxpart

#endif  // RELAXPART_RECURSIVE_HPP
