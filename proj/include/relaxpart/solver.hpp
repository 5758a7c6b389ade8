#ifndef RELAXPART_SOLVER_HPP
#define RELAXPART_SOLVER_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "relaxpart/relaxation.hpp"
#include "relaxpart/spectral.hpp"
#include "relaxpart/types.hpp"

namespace relaxpart {

enum class InitKind { Spectral, Random, Warm };

struct SolverConfig {
  std::size_t max_iterations = 10000;      // projected-gradient steps over all outer rounds
  std::size_t max_inner_iterations = 500;  // per multiplier round
  std::size_t max_outer_iterations = 200;
  std::size_t max_perturbations = 20;      // saddle escapes per solve
  double step_size_initial = 1.0;
  double penalty_initial = 10.0;           // times max(1, ||G||_inf)
  double penalty_growth = 2.0;
  double penalty_max = 1e8;
  double armijo = 1e-4;
  double tolerance_stationarity = 1e-5;
  double tolerance_constraint = 1e-6;
  std::uint64_t seed = 0;
  InitKind init = InitKind::Spectral;
  std::vector<double> warm_start;  // used with InitKind::Warm
  SpectralOptions spectral;
  std::size_t threads = 1;
  // Called with (iteration, f) after every accepted step.
  std::function<void(std::size_t, std::span<const double>)> on_iterate;
};

struct TraceEntry {
  std::size_t iteration = 0;
  std::size_t outer = 0;          // multiplier round
  double merit = 0;               // augmented Lagrangian after the step
  double objective = 0;
  double disjointness_residual = 0;
  double balance_residual = 0;
  double stationarity_norm = 0;   // projected-gradient norm of the merit before the step
  double step_size = 0;
};

struct ContinuousSolution {
  std::vector<double> f;
  double lambda = 0;              // disjointness multiplier, >= 0
  double mu = 0;                  // balance multiplier in the squared-penalty form
  double balance_multiplier = 0;  // same constraint, linear two-sided form
  double objective_value = 0;
  double stationarity_norm = 0;
  std::size_t iterations = 0;
  std::size_t outer_iterations = 0;
  bool converged = false;
  bool spectral_fell_back = false;
  std::vector<TraceEntry> trace;
};

/// Residual of the critical-point equation restricted to coordinates strictly
/// inside the box.
///
/// The solver's disjointness multiplier is the KKT multiplier of
/// <f,a-f> - 2 eps C <= 0 and is kept >= 0. The Lagrangian subtracts its
/// constraint term, so the equation is evaluated with -lambda.
inline double kkt_residual_norm(const RelaxationProblem& problem, std::span<const double> f,
                                double lambda, double mu) {
  const auto r = stationarity_residual(problem.G, f, -lambda, mu, problem.C, problem.vertex_weights);
  double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] > 0.0 && f[i] < 1.0) s += r[i] * r[i];
  return std::sqrt(s);
}

namespace detail {

// Augmented Lagrangian for
//   min <f,G(a-f)>  s.t.  0 <= f <= 1,  <f,a-f> <= 2 eps_d C,  |<w,f> - C| <= eps_b,
// with the two-sided balance condition split into two linear inequalities.
class Merit {
 public:
  Merit(const RelaxationProblem& p, std::size_t threads)
      : p_(p), threads_(threads), degree_(degree_vector(p.G)), gf_(p.G.n()) {}

  struct Value {
    double merit, objective, disjoint, balance;
  };

  // Evaluates at f; keeps G f for the following gradient() call.
  Value evaluate(std::span<const double> f) {
    p_.G.multiply(f, gf_, threads_);
    Value v{};
    for (std::size_t i = 0; i < f.size(); ++i) v.objective += f[i] * (degree_[i] - gf_[i]);
    v.disjoint = disjointness_residual(f, p_.C, p_.eps_disjoint);
    v.balance = balance_residual(f, p_.C, p_.vertex_weights);
    v.merit = v.objective + penalty(lambda, v.disjoint) + penalty(nu_upper, v.balance - p_.eps_balance) +
              penalty(nu_lower, -v.balance - p_.eps_balance);
    return v;
  }

  // Gradient at the point of the last evaluate().
  void gradient(std::span<const double> f, const Value& v, std::span<double> g) const {
    const double ld = std::max(0.0, lambda + rho * v.disjoint);
    const double lb = std::max(0.0, nu_upper + rho * (v.balance - p_.eps_balance)) -
                      std::max(0.0, nu_lower + rho * (-v.balance - p_.eps_balance));
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double w = p_.vertex_weights.empty() ? 1.0 : p_.vertex_weights[i];
      g[i] = degree_[i] - 2.0 * gf_[i] + ld * (1.0 - 2.0 * f[i]) + lb * w;
    }
  }

  void update_multipliers(const Value& v) {
    lambda = std::max(0.0, lambda + rho * v.disjoint);
    nu_upper = std::max(0.0, nu_upper + rho * (v.balance - p_.eps_balance));
    nu_lower = std::max(0.0, nu_lower + rho * (-v.balance - p_.eps_balance));
  }

  double lambda = 0, nu_upper = 0, nu_lower = 0, rho = 1;

 private:
  double penalty(double m, double c) const {
    const double t = std::max(0.0, m + rho * c);
    return (t * t - m * m) / (2.0 * rho);
  }

  const RelaxationProblem& p_;
  std::size_t threads_;
  std::vector<double> degree_;
  std::vector<double> gf_;
};

inline double projected_gradient_norm(std::span<const double> f, std::span<const double> g) {
  double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = std::clamp(f[i] - g[i], 0.0, 1.0) - f[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline void require_finite(std::span<const double> x, double value, std::size_t iteration) {
  if (!std::isfinite(value)) throw NumericalError(iteration, "non-finite merit value");
  for (double v : x)
    if (!std::isfinite(v)) throw NumericalError(iteration, "non-finite iterate");
}

// Moves every interior coordinate by seeded noise of size 1e-3.
inline void perturb_interior(std::span<double> f, std::mt19937_64& rng) {
  for (double& x : f)
    if (x > 0.0 && x < 1.0) x = std::clamp(x + 1e-3 * (2.0 * unit_uniform(rng) - 1.0), 0.0, 1.0);
}

}  // namespace detail

/// Starting point per config.init; also reports whether spectral init fell
/// back to random. A start at a/2 is perturbed by seeded noise of size 1e-3.
inline std::vector<double> initial_point(const RelaxationProblem& problem, const SolverConfig& config,
                                         bool* fell_back = nullptr) {
  const std::size_t n = problem.G.n();
  std::vector<double> f;
  bool fallback = false;
  switch (config.init) {
    case InitKind::Spectral: {
      SpectralOptions opts = config.spectral;
      opts.threads = config.threads;
      auto s = spectral_init(problem.G, config.seed, opts);
      fallback = s.fell_back;
      f = std::move(s.f);
      break;
    }
    case InitKind::Random:
      f = random_init(n, config.seed);
      break;
    case InitKind::Warm:
      detail::require_size(config.warm_start.size(), n);
      f = config.warm_start;
      for (double& x : f) x = std::clamp(x, 0.0, 1.0);
      break;
  }
  double dist = 0;
  for (double x : f) dist += (1.0 - 2.0 * x) * (1.0 - 2.0 * x);
  if (std::sqrt(dist) < 1e-9) {
    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    for (double& x : f) x = std::clamp(x + 1e-3 * (2.0 * detail::unit_uniform(rng) - 1.0), 0.0, 1.0);
  }
  if (fell_back) *fell_back = fallback;
  return f;
}

/// Augmented-Lagrangian outer loop around projected gradient descent on the
/// box with Armijo backtracking. Non-convergence is reported, not thrown.
inline ContinuousSolution solve(const RelaxationProblem& problem, const SolverConfig& config = {}) {
  problem.validate();
  const std::size_t n = problem.G.n();
  ContinuousSolution out;
  out.f = initial_point(problem, config, &out.spectral_fell_back);

  detail::Merit merit(problem, config.threads);
  merit.rho = config.penalty_initial * std::max(1.0, problem.G.norm_inf());
  std::vector<double> f = out.f, trial(n), grad(n), previous_grad(n);
  auto value = merit.evaluate(f);
  detail::require_finite(f, value.merit, 0);
  merit.gradient(f, value, grad);
  double step = config.step_size_initial;
  double previous_violation = std::numeric_limits<double>::infinity();
  double pg = detail::projected_gradient_norm(f, grad);
  std::size_t iteration = 0;
  std::size_t outer = 0;
  std::mt19937_64 escape_rng(config.seed ^ 0x5851f42d4c957f2dULL);
  std::size_t perturbations = 0;

  auto violation = [&](const detail::Merit::Value& v) {
    return std::max({0.0, v.disjoint, std::abs(v.balance) - problem.eps_balance});
  };

  while (true) {
    for (std::size_t inner = 0; inner < config.max_inner_iterations && iteration < config.max_iterations;
         ++inner) {
      if (pg <= config.tolerance_stationarity) break;
      double t = step;
      detail::Merit::Value next{};
      bool accepted = false;
      while (t > 1e-16) {
        double decrease = 0;
        for (std::size_t i = 0; i < n; ++i) {
          trial[i] = std::clamp(f[i] - t * grad[i], 0.0, 1.0);
          decrease += grad[i] * (trial[i] - f[i]);
        }
        next = merit.evaluate(trial);
        detail::require_finite(trial, next.merit, iteration + 1);
        if (decrease == 0.0) break;
        if (next.merit <= value.merit + config.armijo * decrease) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      ++iteration;
      if (!accepted) {
        // Line search exhausted; the merit is flat to working precision here.
        merit.evaluate(f);
        break;
      }
      std::swap(f, trial);
      std::swap(grad, previous_grad);
      value = next;
      merit.gradient(f, value, grad);
      out.trace.push_back({iteration, outer, value.merit, value.objective, value.disjoint, value.balance,
                           pg, t});
      pg = detail::projected_gradient_norm(f, grad);
      if (config.on_iterate) config.on_iterate(iteration, f);
      // Barzilai-Borwein trial step for the next iteration.
      double ss = 0, sy = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double di = f[i] - trial[i];
        ss += di * di;
        sy += di * (grad[i] - previous_grad[i]);
      }
      step = sy > 0 ? std::clamp(ss / sy, 1e-12, 1e12) : std::min(2.0 * t, 1e6);
    }

    double viol = violation(value);
    if (pg <= config.tolerance_stationarity && viol <= config.tolerance_constraint) {
      out.converged = true;
      break;
    }
    if (iteration >= config.max_iterations || outer + 1 >= config.max_outer_iterations) break;

    const bool stalled = viol > 0.5 * previous_violation;
    merit.update_multipliers(value);
    if (value.disjoint > config.tolerance_constraint && perturbations < config.max_perturbations &&
        (pg <= config.tolerance_stationarity || stalled)) {
      // Stalled while still overlapping. Coordinates that share a value (twin
      // vertices, or exactly 1/2) sit on a saddle of the overlap term; a
      // seeded nudge lets them separate.
      ++perturbations;
      detail::perturb_interior(f, escape_rng);
      viol = std::numeric_limits<double>::infinity();
    } else if (stalled) {
      merit.rho = std::min(merit.rho * config.penalty_growth, config.penalty_max);
    }
    previous_violation = viol;
    ++outer;
    value = merit.evaluate(f);
    merit.gradient(f, value, grad);
    pg = detail::projected_gradient_norm(f, grad);
  }

  // Coordinates within tolerance of a bound with an outward gradient are
  // placed on the bound.
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i] <= config.tolerance_stationarity && grad[i] > 0) f[i] = 0.0;
    if (f[i] >= 1.0 - config.tolerance_stationarity && grad[i] < 0) f[i] = 1.0;
  }
  value = merit.evaluate(f);

  // Report the multipliers that enter the current merit gradient.
  const double lambda = std::max(0.0, merit.lambda + merit.rho * value.disjoint);
  const double nu = std::max(0.0, merit.nu_upper + merit.rho * (value.balance - problem.eps_balance)) -
                    std::max(0.0, merit.nu_lower + merit.rho * (-value.balance - problem.eps_balance));
  out.f = std::move(f);
  out.lambda = lambda;
  out.balance_multiplier = nu;
  // 2 mu b w = -nu w maps the linear form onto the squared-penalty form.
  out.mu = value.balance != 0.0 ? -nu / (2.0 * value.balance) : 0.0;
  out.objective_value = objective(problem.G, out.f, config.threads);
  out.stationarity_norm = kkt_residual_norm(problem, out.f, out.lambda, out.mu);
  out.iterations = iteration;
  out.outer_iterations = outer + 1;
  return out;
}

/// CSV with columns iteration,objective,disjointness_residual,balance_residual,
/// stationarity_norm,step_size. Values use shortest round-trip formatting.
inline std::string trace_csv(const std::vector<TraceEntry>& trace) {
  std::string out = "iteration,objective,disjointness_residual,balance_residual,stationarity_norm,step_size\n";
  char buf[64];
  auto put = [&](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
  };
  for (const auto& e : trace) {
    out += std::to_string(e.iteration);
    for (double v : {e.objective, e.disjointness_residual, e.balance_residual, e.stationarity_norm, e.step_size}) {
      out += ',';
      put(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace relaxpart

#endif  // RELAXPART_SOLVER_HPP
