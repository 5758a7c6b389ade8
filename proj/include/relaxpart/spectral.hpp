#ifndef RELAXPART_SPECTRAL_HPP
#define RELAXPART_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "relaxpart/relaxation.hpp"

namespace relaxpart {

namespace detail {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform,
// unlike std::uniform_real_distribution.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Eigenpairs of a small dense symmetric matrix (row-major, n x n) by cyclic
// Jacobi rotations. Returns eigenvalues; `vectors` receives eigenvectors as
// columns.
inline std::vector<double> jacobi_eigen(std::vector<double> a, std::size_t n,
                                        std::vector<double>& vectors) {
  vectors.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) vectors[i * n + i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = vectors[k * n + p], vkq = vectors[k * n + q];
          vectors[k * n + p] = c * vkp - s * vkq;
          vectors[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a[i * n + i];
  return values;
}

inline void remove_mean(std::span<double> x) {
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

inline double norm2(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace detail

struct SpectralOptions {
  double tolerance = 1e-8;           // on ||L v - theta v||, relative to the Gershgorin bound of L
  std::size_t max_iterations = 5000; // Laplacian products
  std::size_t krylov_dimension = 40;
  std::size_t threads = 1;
};

struct SpectralResult {
  std::vector<double> f;        // initial point in [0,1]^n
  std::vector<double> fiedler;  // unit-norm eigenvector orthogonal to a
  double eigenvalue = 0;
  double residual = 0;
  std::size_t iterations = 0;
  bool converged = false;
  bool fell_back = false;       // f is the random init instead
};

/// Uniform random point of [0,1]^n.
inline std::vector<double> random_init(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> f(n);
  for (double& x : f) x = detail::unit_uniform(rng);
  return f;
}

/// Fiedler vector of L = diag(G a) - G, found by explicitly restarted Lanczos
/// on the complement of the constant vector. The starting vector comes from
/// `seed`. The result is mapped to f0 = clamp(1/2 + v / (2 max|v|), 0, 1).
///
/// Deflation is against the global constant vector only, so on a disconnected
/// hypergraph the zero-eigenvalue component indicators are eligible.
inline SpectralResult spectral_init(const KernelMatrix& G, std::uint64_t seed,
                                    const SpectralOptions& options = {}) {
  const std::size_t n = G.n();
  SpectralResult out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  const std::vector<double> degree = degree_vector(G);
  const double bound = std::max(1.0, 2.0 * *std::max_element(degree.begin(), degree.end()));
  std::vector<double> scratch(n);
  auto laplacian = [&](std::span<const double> x, std::span<double> y) {
    G.multiply(x, scratch, options.threads);
    for (std::size_t i = 0; i < n; ++i) y[i] = degree[i] * x[i] - scratch[i];
  };

  std::mt19937_64 rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = 2.0 * detail::unit_uniform(rng) - 1.0;
  detail::remove_mean(x);
  double nx = detail::norm2(x);
  if (n < 2 || nx == 0) {
    out.fell_back = true;
    out.f = random_init(n, seed);
    return out;
  }
  for (double& v : x) v /= nx;

  const std::size_t m = std::max<std::size_t>(2, std::min(options.krylov_dimension, n - 1));
  std::vector<std::vector<double>> basis;
  std::vector<double> lx(n), w(n), tri, tri_vectors;
  std::size_t products = 0;
  double theta = 0;
  double residual = 0;
  while (true) {
    laplacian(x, lx);
    ++products;
    theta = detail::dot(x, lx);
    residual = 0;
    for (std::size_t i = 0; i < n; ++i) residual += (lx[i] - theta * x[i]) * (lx[i] - theta * x[i]);
    residual = std::sqrt(residual);
    if (residual <= options.tolerance * bound) {
      out.converged = true;
      break;
    }
    if (products >= options.max_iterations) break;

    // One Lanczos cycle of at most m steps from x, full reorthogonalization.
    basis.assign(1, x);
    std::vector<double> alpha, beta;
    for (std::size_t j = 0; j < m && products < options.max_iterations; ++j) {
      if (j == 0) {
        w = lx;
      } else {
        laplacian(basis[j], w);
        ++products;
      }
      alpha.push_back(detail::dot(basis[j], w));
      for (int pass = 0; pass < 2; ++pass) {
        detail::remove_mean(w);
        for (const auto& q : basis) {
          const double c = detail::dot(q, w);
          for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
        }
      }
      const double b = detail::norm2(w);
      if (b <= 1e-14 * bound || j + 1 == m) break;
      beta.push_back(b);
      for (double& v : w) v /= b;
      basis.push_back(w);
    }
    const std::size_t k = alpha.size();
    tri.assign(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      tri[i * k + i] = alpha[i];
      if (i + 1 < k) tri[i * k + i + 1] = tri[(i + 1) * k + i] = beta[i];
    }
    const auto values = detail::jacobi_eigen(tri, k, tri_vectors);
    const std::size_t best =
        static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const double c = tri_vectors[j * k + best];
      for (std::size_t i = 0; i < n; ++i) x[i] += c * basis[j][i];
    }
    detail::remove_mean(x);
    nx = detail::norm2(x);
    for (double& v : x) v /= nx;
  }

  out.iterations = products;
  out.eigenvalue = theta;
  out.residual = residual;
  if (!out.converged) {
    out.fell_back = true;
    out.fiedler = x;
    out.f = random_init(n, seed);
    return out;
  }
  // Fix the sign: the first entry of largest magnitude is positive.
  std::size_t lead = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(x[i]) > std::abs(x[lead]) * (1 + 1e-12)) lead = i;
  if (x[lead] < 0)
    for (double& v : x) v = -v;
  const double scale = std::abs(x[lead]);
  out.f.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.f[i] = std::clamp(0.5 + x[i] / (2.0 * scale), 0.0, 1.0);
  out.fiedler = std::move(x);
  return out;
}

}  // namespace relaxpart

#endif  // RELAXPART_SPECTRAL_HPP
