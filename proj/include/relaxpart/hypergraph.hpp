#ifndef RELAXPART_HYPERGRAPH_HPP
#define RELAXPART_HYPERGRAPH_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaxpart/types.hpp"

namespace relaxpart {

/// Weighted hypergraph in pin-list (CSR) form.
///
/// Each hyperedge holds at least two distinct pins. Construction through
/// `from_edges` deduplicates pins and drops hyperedges that end up with fewer
/// than two; the validating constructor rejects them instead.
class Hypergraph {
 public:
  Hypergraph() : pin_offsets_{0} {}

  Hypergraph(Index num_vertices, std::vector<std::size_t> pin_offsets, std::vector<Index> pins,
             std::vector<Weight> hyperedge_weights, std::vector<Weight> vertex_weights)
      : num_vertices_(num_vertices),
        pin_offsets_(std::move(pin_offsets)),
        pins_(std::move(pins)),
        hyperedge_weights_(std::move(hyperedge_weights)),
        vertex_weights_(std::move(vertex_weights)) {
    if (hyperedge_weights_.empty()) hyperedge_weights_.assign(num_hyperedges(), 1.0);
    if (vertex_weights_.empty()) vertex_weights_.assign(num_vertices_, 1.0);
    validate();
  }

  /// Builds from explicit pin lists; duplicate pins are merged and
  /// hyperedges with < 2 distinct pins are skipped (counted in `dropped`).
  static Hypergraph from_edges(Index num_vertices, const std::vector<std::vector<Index>>& edges,
                               std::vector<Weight> hyperedge_weights = {},
                               std::vector<Weight> vertex_weights = {},
                               std::size_t* dropped = nullptr) {
    if (!hyperedge_weights.empty() && hyperedge_weights.size() != edges.size())
      throw std::invalid_argument("hyperedge weight count does not match hyperedge count");
    std::vector<std::size_t> offsets{0};
    std::vector<Index> pins;
    std::vector<Weight> weights;
    std::vector<char> seen(num_vertices, 0);
    std::size_t skipped = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::size_t start = pins.size();
      for (Index v : edges[e]) {
        if (v >= num_vertices)
          throw std::invalid_argument("pin " + std::to_string(v) + " out of range");
        if (!seen[v]) {
          seen[v] = 1;
          pins.push_back(v);
        }
      }
      for (std::size_t i = start; i < pins.size(); ++i) seen[pins[i]] = 0;
      if (pins.size() - start < 2) {
        pins.resize(start);
        ++skipped;
        continue;
      }
      offsets.push_back(pins.size());
      weights.push_back(hyperedge_weights.empty() ? 1.0 : hyperedge_weights[e]);
    }
    if (dropped) *dropped = skipped;
    return Hypergraph(num_vertices, std::move(offsets), std::move(pins), std::move(weights),
                      std::move(vertex_weights));
  }

  Index num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_hyperedges() const noexcept { return pin_offsets_.size() - 1; }
  std::size_t num_pins() const noexcept { return pins_.size(); }

  std::span<const Index> pins(std::size_t e) const {
    return {pins_.data() + pin_offsets_[e], pin_offsets_[e + 1] - pin_offsets_[e]};
  }
  std::size_t edge_size(std::size_t e) const { return pin_offsets_[e + 1] - pin_offsets_[e]; }

  const std::vector<std::size_t>& pin_offsets() const noexcept { return pin_offsets_; }
  const std::vector<Index>& pin_array() const noexcept { return pins_; }
  const std::vector<Weight>& hyperedge_weights() const noexcept { return hyperedge_weights_; }
  const std::vector<Weight>& vertex_weights() const noexcept { return vertex_weights_; }
  Weight hyperedge_weight(std::size_t e) const { return hyperedge_weights_[e]; }
  Weight vertex_weight(Index v) const { return vertex_weights_[v]; }

  Weight total_vertex_weight() const {
    return std::accumulate(vertex_weights_.begin(), vertex_weights_.end(), Weight{0});
  }

  /// Sub-hypergraph induced by `vertices` (new vertex i is vertices[i]).
  /// Pins outside the set are removed; hyperedges left with < 2 pins vanish.
  Hypergraph induced(std::span<const Index> vertices) const {
    constexpr Index absent = static_cast<Index>(-1);
    std::vector<Index> local(num_vertices_, absent);
    std::vector<Weight> vw;
    vw.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      local[vertices[i]] = static_cast<Index>(i);
      vw.push_back(vertex_weights_[vertices[i]]);
    }
    std::vector<std::size_t> offsets{0};
    std::vector<Index> pins;
    std::vector<Weight> ew;
    for (std::size_t e = 0; e < num_hyperedges(); ++e) {
      const std::size_t start = pins.size();
      for (Index v : this->pins(e))
        if (local[v] != absent) pins.push_back(local[v]);
      if (pins.size() - start < 2) {
        pins.resize(start);
        continue;
      }
      offsets.push_back(pins.size());
      ew.push_back(hyperedge_weights_[e]);
    }
    return Hypergraph(static_cast<Index>(vertices.size()), std::move(offsets), std::move(pins),
                      std::move(ew), std::move(vw));
  }

  bool operator==(const Hypergraph&) const = default;

 private:
  void validate() const {
    if (pin_offsets_.empty() || pin_offsets_.front() != 0 || pin_offsets_.back() != pins_.size())
      throw std::invalid_argument("pin offsets do not delimit the pin array");
    if (hyperedge_weights_.size() != num_hyperedges())
      throw std::invalid_argument("hyperedge weight count does not match hyperedge count");
    if (vertex_weights_.size() != num_vertices_)
      throw std::invalid_argument("vertex weight count does not match vertex count");
    for (Weight w : hyperedge_weights_)
      if (!(w >= 0) || !std::isfinite(w)) throw std::invalid_argument("negative hyperedge weight");
    for (Weight w : vertex_weights_)
      if (!(w >= 0) || !std::isfinite(w)) throw std::invalid_argument("negative vertex weight");
    std::vector<char> seen(num_vertices_, 0);
    for (std::size_t e = 0; e < num_hyperedges(); ++e) {
      if (pin_offsets_[e + 1] < pin_offsets_[e])
        throw std::invalid_argument("pin offsets must be nondecreasing");
      if (edge_size(e) < 2)
        throw std::invalid_argument("hyperedge " + std::to_string(e) + " has fewer than 2 pins");
      for (Index v : pins(e)) {
        if (v >= num_vertices_) throw std::invalid_argument("pin index out of range");
        if (seen[v]) throw std::invalid_argument("duplicate pin in hyperedge " + std::to_string(e));
        seen[v] = 1;
      }
      for (Index v : pins(e)) seen[v] = 0;
    }
  }

  Index num_vertices_ = 0;
  std::vector<std::size_t> pin_offsets_;
  std::vector<Index> pins_;
  std::vector<Weight> hyperedge_weights_;
  std::vector<Weight> vertex_weights_;
};

/// Block id per vertex, ids in [0, k).
struct Partition {
  std::vector<BlockId> assignment;
  BlockId k = 2;

  bool operator==(const Partition&) const = default;
};

struct CutMetrics {
  Weight cut_net = 0;
  Weight connectivity_minus_one = 0;
  std::vector<Weight> block_weights;
  double imbalance = 0;
};

inline void check_partition(const Hypergraph& h, const Partition& p) {
  if (p.k < 1) throw std::invalid_argument("partition needs at least one block");
  if (p.assignment.size() != h.num_vertices())
    throw std::invalid_argument("partition size " + std::to_string(p.assignment.size()) +
                                " does not match vertex count " +
                                std::to_string(h.num_vertices()));
  for (BlockId b : p.assignment)
    if (b >= p.k)
      throw std::invalid_argument("block id " + std::to_string(b) + " not below k=" +
                                  std::to_string(p.k));
}

inline std::vector<Weight> block_weights(const Hypergraph& h, const Partition& p) {
  check_partition(h, p);
  std::vector<Weight> weights(p.k, 0.0);
  for (Index v = 0; v < h.num_vertices(); ++v) weights[p.assignment[v]] += h.vertex_weight(v);
  return weights;
}

inline CutMetrics cut_metrics(const Hypergraph& h, const Partition& p) {
  CutMetrics m;
  m.block_weights = block_weights(h, p);
  std::vector<BlockId> touched;
  for (std::size_t e = 0; e < h.num_hyperedges(); ++e) {
    touched.clear();
    for (Index v : h.pins(e)) {
      BlockId b = p.assignment[v];
      if (std::find(touched.begin(), touched.end(), b) == touched.end()) touched.push_back(b);
    }
    if (touched.size() > 1) {
      m.cut_net += h.hyperedge_weight(e);
      m.connectivity_minus_one += h.hyperedge_weight(e) * static_cast<Weight>(touched.size() - 1);
    }
  }
  const Weight total = std::accumulate(m.block_weights.begin(), m.block_weights.end(), Weight{0});
  const Weight heaviest = *std::max_element(m.block_weights.begin(), m.block_weights.end());
  m.imbalance = total > 0 ? heaviest / (total / p.k) - 1.0 : 0.0;
  return m;
}

/// Largest admissible block weight: (1+eps) times the ceiling of the average.
/// A relative slack of 1e-12 absorbs rounding in the product.
inline Weight max_block_weight(Weight total, double share, double eps) {
  return (1.0 + eps) * std::ceil(total * share - 1e-9) * (1.0 + 1e-12);
}

inline bool is_balanced(const Hypergraph& h, const Partition& p, double eps) {
  if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
  const auto weights = block_weights(h, p);
  const Weight limit = max_block_weight(h.total_vertex_weight(), 1.0 / p.k, eps);
  return std::all_of(weights.begin(), weights.end(), [&](Weight w) { return w <= limit; });
}

}  // namespace relaxpart

#endif  // RELAXPART_HYPERGRAPH_HPP
