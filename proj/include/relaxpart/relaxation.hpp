#ifndef RELAXPART_RELAXATION_HPP
#define RELAXPART_RELAXATION_HPP

#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "relaxpart/kernel.hpp"

namespace relaxpart {

// Notation: a is the all-ones vector, f in [0,1]^n the continuous indicator of
// block 0, a - f the indicator of block 1.

/// G plus the constants of the two side conditions.
struct RelaxationProblem {
  KernelMatrix G;
  double C = 0;             // target weight of block 0 (half the total for a bisection)
  double eps_balance = 0;   // |<w,f> - C| <= eps_balance
  double eps_disjoint = 0;  // <f, a - f> <= 2 eps_disjoint C
  std::vector<Weight> vertex_weights;  // empty means unit weights (w = a)

  void validate() const {
    if (!(C > 0)) throw std::invalid_argument("C must be positive");
    if (eps_balance < 0 || eps_disjoint < 0) throw std::invalid_argument("eps must be nonnegative");
    if (!vertex_weights.empty() && vertex_weights.size() != G.n())
      throw std::invalid_argument("vertex weight count does not match kernel dimension");
  }
};

/// Bisection problem for h with block-0 target `share` of the total weight.
/// The balance tolerance is `eps_balance_fraction * C`.
inline RelaxationProblem make_problem(const Hypergraph& h, KernelMatrix G, double eps_balance_fraction,
                                      double eps_disjoint, double share = 0.5) {
  RelaxationProblem p;
  p.G = std::move(G);
  p.C = share * h.total_vertex_weight();
  p.eps_balance = eps_balance_fraction * p.C;
  p.eps_disjoint = eps_disjoint;
  const auto& w = h.vertex_weights();
  if (std::any_of(w.begin(), w.end(), [](Weight x) { return x != 1.0; })) p.vertex_weights = w;
  p.validate();
  return p;
}

namespace detail {

inline void require_size(std::size_t got, std::size_t want) {
  if (got != want)
    throw std::invalid_argument("dimension mismatch: got " + std::to_string(got) + ", expected " +
                                std::to_string(want));
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace detail

/// <f, G(a - f)>.
inline double objective(const KernelMatrix& G, std::span<const double> f, std::size_t threads = 1) {
  detail::require_size(f.size(), G.n());
  std::vector<double> rest(f.size()), image(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) rest[i] = 1.0 - f[i];
  G.multiply(rest, image, threads);
  return detail::dot(f, image);
}

/// G(a - 2f), the gradient of the objective for symmetric G.
inline std::vector<double> objective_gradient(const KernelMatrix& G, std::span<const double> f,
                                              std::size_t threads = 1) {
  detail::require_size(f.size(), G.n());
  std::vector<double> u(f.size()), grad(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) u[i] = 1.0 - 2.0 * f[i];
  G.multiply(u, grad, threads);
  return grad;
}

/// <f, a - f> - 2 eps C; the weakened disjointness condition holds iff <= 0.
inline double disjointness_residual(std::span<const double> f, double C, double eps) {
  double s = 0;
  for (double x : f) s += x * (1.0 - x);
  return s - 2.0 * eps * C;
}

/// <a, f> - C (signed).
inline double balance_residual(std::span<const double> f, double C) {
  return std::accumulate(f.begin(), f.end(), 0.0) - C;
}

/// <w, f> - C; empty w means unit weights.
inline double balance_residual(std::span<const double> f, double C, std::span<const Weight> w) {
  if (w.empty()) return balance_residual(f, C);
  detail::require_size(f.size(), w.size());
  return detail::dot(f, w) - C;
}

/// <f,G(a-f)> - lambda (<f,a-f> - 2 eps_d C) - mu ((<a,f> - C)^2 - eps_b^2)
inline double lagrangian(const KernelMatrix& G, std::span<const double> f, double lambda, double mu,
                         double C, double eps_d, double eps_b) {
  const double b = balance_residual(f, C);
  return objective(G, f) - lambda * disjointness_residual(f, C, eps_d) - mu * (b * b - eps_b * eps_b);
}

/// r = (G - lambda I)(a - 2f) - 2 mu (<w,f> - C) w. Zero at a critical
/// point of `lagrangian` (w = a for unit weights).
inline std::vector<double> stationarity_residual(const KernelMatrix& G, std::span<const double> f,
                                                 double lambda, double mu, double C,
                                                 std::span<const Weight> w = {}) {
  detail::require_size(f.size(), G.n());
  std::vector<double> r = objective_gradient(G, f);
  const double b = balance_residual(f, C, w);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double wi = w.empty() ? 1.0 : w[i];
    r[i] -= lambda * (1.0 - 2.0 * f[i]) + 2.0 * mu * b * wi;
  }
  return r;
}

}  // namespace relaxpart

#endif  // RELAXPART_RELAXATION_HPP
