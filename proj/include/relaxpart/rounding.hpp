#ifndef RELAXPART_ROUNDING_HPP
#define RELAXPART_ROUNDING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "relaxpart/hypergraph.hpp"

namespace relaxpart {

/// Admissible weights for the two sides of a bisection. `target0` is the
/// ideal weight of side 0, used for tie-breaking.
struct BisectionTarget {
  Weight max0 = 0;
  Weight max1 = 0;
  Weight target0 = 0;
  Weight target1 = 0;

  /// Sides holding `blocks0` and `blocks1` of `blocks0 + blocks1` final
  /// blocks, each allowed (1+eps) times the ceiling of its proportional share.
  static BisectionTarget proportional(Weight total, std::size_t blocks0, std::size_t blocks1, double eps) {
    const double k = static_cast<double>(blocks0 + blocks1);
    BisectionTarget t;
    t.target0 = total * static_cast<double>(blocks0) / k;
    t.target1 = total * static_cast<double>(blocks1) / k;
    t.max0 = max_block_weight(total, static_cast<double>(blocks0) / k, eps);
    t.max1 = max_block_weight(total, static_cast<double>(blocks1) / k, eps);
    return t;
  }
};

struct Bisection {
  Partition partition;
  Weight cut = 0;         // cut-net weight
  bool feasible = false;  // both sides within their limits
};

namespace detail {

// vertex -> incident hyperedges
inline void incidence(const Hypergraph& h, std::vector<std::size_t>& offsets, std::vector<std::size_t>& edges) {
  offsets.assign(std::size_t{h.num_vertices()} + 1, 0);
  for (Index v : h.pin_array()) ++offsets[std::size_t{v} + 1];
  for (std::size_t v = 0; v < h.num_vertices(); ++v) offsets[v + 1] += offsets[v];
  edges.resize(h.num_pins());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (std::size_t e = 0; e < h.num_hyperedges(); ++e)
    for (Index v : h.pins(e)) edges[fill[v]++] = e;
}

inline double total_edge_weight(const Hypergraph& h) {
  const auto& w = h.hyperedge_weights();
  return std::accumulate(w.begin(), w.end(), 0.0);
}

}  // namespace detail

/// Sweep cut with explicit side limits.
///
/// Vertices are ordered by f descending (ties: lower index first); side 0 is
/// a prefix of that order. Among prefixes within both limits the one with the
/// smallest cut-net wins, then the one closest to target0, then the shorter.
/// Without any admissible prefix, the least overloaded one is returned and
/// `feasible` is false.
inline Bisection sweep_round(const Hypergraph& h, std::span<const double> f, const BisectionTarget& target) {
  const std::size_t n = h.num_vertices();
  if (f.size() != n) throw std::invalid_argument("f has wrong length for sweep rounding");
  Bisection out;
  out.partition.k = 2;
  out.partition.assignment.assign(n, 1);
  const Weight total = h.total_vertex_weight();
  if (n < 2) {
    std::fill(out.partition.assignment.begin(), out.partition.assignment.end(), 0);
    out.feasible = total <= target.max0;
    out.cut = 0;
    return out;
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return f[a] > f[b]; });

  std::vector<std::size_t> inc_offsets, inc_edges;
  detail::incidence(h, inc_offsets, inc_edges);
  std::vector<std::size_t> inside(h.num_hyperedges(), 0);
  const double tol = 1e-9 * std::max(1.0, detail::total_edge_weight(h));

  double cut = 0;
  Weight w0 = 0;
  bool have_feasible = false;
  std::size_t best_len = 0;
  double best_cut = 0, best_gap = 0, best_overload = 0;
  for (std::size_t len = 1; len < n; ++len) {
    const Index v = order[len - 1];
    w0 += h.vertex_weight(v);
    for (std::size_t p = inc_offsets[v]; p < inc_offsets[std::size_t{v} + 1]; ++p) {
      const std::size_t e = inc_edges[p];
      const std::size_t size = h.edge_size(e);
      const bool was_cut = inside[e] > 0 && inside[e] < size;
      ++inside[e];
      const bool now_cut = inside[e] < size;
      if (was_cut && !now_cut) cut -= h.hyperedge_weight(e);
      if (!was_cut && now_cut) cut += h.hyperedge_weight(e);
    }
    const Weight w1 = total - w0;
    const bool feasible = w0 <= target.max0 && w1 <= target.max1;
    const double gap = std::abs(w0 - target.target0);
    if (feasible) {
      const bool better = !have_feasible || cut < best_cut - tol ||
                          (std::abs(cut - best_cut) <= tol && gap < best_gap - 1e-12 * std::max(1.0, total));
      if (better) {
        have_feasible = true;
        best_len = len;
        best_cut = cut;
        best_gap = gap;
      }
    } else if (!have_feasible) {
      const double overload = std::max(target.target0 > 0 ? w0 / target.target0 : 0.0,
                                       target.target1 > 0 ? w1 / target.target1 : 0.0);
      if (best_len == 0 || overload < best_overload - 1e-12 ||
          (std::abs(overload - best_overload) <= 1e-12 && cut < best_cut - tol)) {
        best_len = len;
        best_cut = cut;
        best_overload = overload;
      }
    }
  }
  for (std::size_t i = 0; i < best_len; ++i) out.partition.assignment[order[i]] = 0;
  out.feasible = have_feasible;
  out.cut = cut_metrics(h, out.partition).cut_net;
  return out;
}

/// Balanced sweep cut: both sides limited to (1+eps) ceil(total / 2).
inline Bisection sweep_round(const Hypergraph& h, std::span<const double> f, double eps) {
  if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
  return sweep_round(h, f, BisectionTarget::proportional(h.total_vertex_weight(), 1, 1, eps));
}

/// Exact minimum cut-net bisection satisfying is_balanced(., eps), by
/// enumeration of all 2^(n-1) splits with vertex 0 in block 0. Among equal
/// cuts the lowest encoding (bit i set = vertex i in block 1) wins.
inline Bisection brute_force_bisect(const Hypergraph& h, double eps) {
  const std::size_t n = h.num_vertices();
  if (n > 24) throw std::invalid_argument("brute force bisection limited to 24 vertices");
  if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
  const Weight limit = max_block_weight(h.total_vertex_weight(), 0.5, eps);
  const Weight total = h.total_vertex_weight();
  std::vector<std::uint32_t> masks(h.num_hyperedges(), 0);
  for (std::size_t e = 0; e < h.num_hyperedges(); ++e)
    for (Index v : h.pins(e)) masks[e] |= std::uint32_t{1} << v;
  const double tol = 1e-9 * std::max(1.0, detail::total_edge_weight(h));

  bool found = false;
  std::uint32_t best = 0;
  double best_cut = 0;
  const std::uint32_t all = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  const std::uint64_t count = n == 0 ? 1 : std::uint64_t{1} << (n - 1);
  for (std::uint64_t half = 0; half < count; ++half) {
    const std::uint32_t side1 = static_cast<std::uint32_t>(half << 1);
    Weight w1 = 0;
    for (std::uint32_t rest = side1; rest; rest &= rest - 1) w1 += h.vertex_weight(static_cast<Index>(__builtin_ctz(rest)));
    if (w1 > limit || total - w1 > limit) continue;
    double cut = 0;
    for (std::size_t e = 0; e < masks.size(); ++e)
      if ((masks[e] & side1) != 0 && (masks[e] & (all & ~side1)) != 0) cut += h.hyperedge_weight(e);
    if (!found || cut < best_cut - tol) {
      found = true;
      best = side1;
      best_cut = cut;
    }
  }
  if (!found) throw std::domain_error("no balanced bisection exists for this eps");
  Bisection out;
  out.partition.k = 2;
  out.partition.assignment.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.partition.assignment[v] = (best >> v) & 1u;
  out.cut = cut_metrics(h, out.partition).cut_net;
  out.feasible = true;
  return out;
}

}  // namespace relaxpart

#endif  // RELAXPART_ROUNDING_HPP
