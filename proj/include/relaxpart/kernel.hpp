#ifndef RELAXPART_KERNEL_HPP
#define RELAXPART_KERNEL_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "relaxpart/hypergraph.hpp"
#include "relaxpart/parallel.hpp"

namespace relaxpart {

enum class ExpansionScheme {
  CliqueUniform,  // every pin pair of e gets w_e
  CliqueScaled,   // every pin pair of e gets w_e / (|e| - 1)
};

/// Symmetric nonnegative pairwise kernel in CSR form, zero diagonal.
class KernelMatrix {
 public:
  KernelMatrix() : row_offsets_{0} {}

  KernelMatrix(Index n, std::vector<std::size_t> row_offsets, std::vector<Index> columns,
               std::vector<Weight> values)
      : n_(n),
        row_offsets_(std::move(row_offsets)),
        columns_(std::move(columns)),
        values_(std::move(values)) {
    if (row_offsets_.size() != std::size_t{n_} + 1 || row_offsets_.back() != columns_.size() ||
        columns_.size() != values_.size())
      throw std::invalid_argument("inconsistent CSR arrays");
  }

  Index n() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  const std::vector<std::size_t>& row_offsets() const noexcept { return row_offsets_; }
  const std::vector<Index>& columns() const noexcept { return columns_; }
  const std::vector<Weight>& values() const noexcept { return values_; }

  std::span<const Index> row_columns(Index i) const {
    return {columns_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
  }
  std::span<const Weight> row_values(Index i) const {
    return {values_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
  }

  /// Stored value at (i, j), 0 when absent. Columns within a row are sorted.
  Weight at(Index i, Index j) const {
    auto cols = row_columns(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0;
    return values_[row_offsets_[i] + static_cast<std::size_t>(it - cols.begin())];
  }

  /// y = G x. Rows are split across `threads`; each row is summed in a fixed
  /// order, so the result is the same for any thread count.
  void multiply(std::span<const double> x, std::span<double> y, std::size_t threads = 1) const {
    if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("dimension mismatch in G*x");
    parallel_chunks(n_, threads, 4096, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        double sum = 0;
        for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
          sum += values_[p] * x[columns_[p]];
        y[i] = sum;
      }
    });
  }

  std::vector<double> operator*(std::span<const double> x) const {
    std::vector<double> y(n_);
    multiply(x, y);
    return y;
  }

  /// Maximum absolute row sum.
  double norm_inf() const {
    double best = 0;
    for (Index i = 0; i < n_; ++i) {
      double s = 0;
      for (Weight v : row_values(i)) s += std::abs(v);
      best = std::max(best, s);
    }
    return best;
  }

 private:
  Index n_ = 0;
  std::vector<std::size_t> row_offsets_;
  std::vector<Index> columns_;
  std::vector<Weight> values_;
};

/// Clique expansion of every hyperedge; contributions of parallel hyperedges
/// add up.
inline KernelMatrix expand(const Hypergraph& h,
                           ExpansionScheme scheme = ExpansionScheme::CliqueScaled) {
  const Index n = h.num_vertices();
  std::vector<std::tuple<Index, Index, Weight>> triplets;
  std::size_t pairs = 0;
  for (std::size_t e = 0; e < h.num_hyperedges(); ++e) pairs += h.edge_size(e) * (h.edge_size(e) - 1);
  triplets.reserve(pairs);
  for (std::size_t e = 0; e < h.num_hyperedges(); ++e) {
    auto pins = h.pins(e);
    const Weight w = scheme == ExpansionScheme::CliqueUniform
                         ? h.hyperedge_weight(e)
                         : h.hyperedge_weight(e) / static_cast<Weight>(pins.size() - 1);
    if (w == 0) continue;
    for (std::size_t a = 0; a < pins.size(); ++a)
      for (std::size_t b = 0; b < pins.size(); ++b)
        if (a != b) triplets.emplace_back(pins[a], pins[b], w);
  }
  std::sort(triplets.begin(), triplets.end());

  std::vector<std::size_t> offsets(std::size_t{n} + 1, 0);
  std::vector<Index> columns;
  std::vector<Weight> values;
  for (std::size_t t = 0; t < triplets.size();) {
    const auto [row, col, w0] = triplets[t];
    Weight sum = 0;
    for (; t < triplets.size() && std::get<0>(triplets[t]) == row && std::get<1>(triplets[t]) == col; ++t)
      sum += std::get<2>(triplets[t]);
    columns.push_back(col);
    values.push_back(sum);
    ++offsets[std::size_t{row} + 1];
  }
  for (Index i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  return KernelMatrix(n, std::move(offsets), std::move(columns), std::move(values));
}

/// d = G a (row sums).
inline std::vector<double> degree_vector(const KernelMatrix& g) {
  std::vector<double> d(g.n(), 0.0);
  for (Index i = 0; i < g.n(); ++i)
    for (Weight v : g.row_values(i)) d[i] += v;
  return d;
}

/// MatrixMarket coordinate text (symmetric, lower triangle, 1-based).
inline std::string write_matrix_market(const KernelMatrix& g) {
  std::size_t lower = 0;
  for (Index i = 0; i < g.n(); ++i)
    for (Index j : g.row_columns(i))
      if (j < i) ++lower;
  std::string out = "%%MatrixMarket matrix coordinate real symmetric\n";
  out += std::to_string(g.n()) + " " + std::to_string(g.n()) + " " + std::to_string(lower) + "\n";
  char buf[64];
  for (Index i = 0; i < g.n(); ++i) {
    auto cols = g.row_columns(i);
    auto vals = g.row_values(i);
    for (std::size_t p = 0; p < cols.size(); ++p) {
      if (cols[p] >= i) continue;
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, vals[p]);
      out += std::to_string(i + 1) + " " + std::to_string(cols[p] + 1) + " ";
      out.append(buf, ptr);
      out += '\n';
    }
  }
  return out;
}

}  // namespace relaxpart

#endif  // RELAXPART_KERNEL_HPP
