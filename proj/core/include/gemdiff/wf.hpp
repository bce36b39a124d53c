#pragma once

// One-dimensional Wright-Fisher diffusion
//   dX = (a - (a+b)X) dt + sqrt(X(1-X)) dB,   X in [0,1],
// with stationary law Beta(2a, 2b), its scale function, and the closed-form
// mean decay of the linear eigenfunction h(x) = a - (a+b)x.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "gemdiff/rng.hpp"

namespace gemdiff {

/// Drift pair (a, b), both strictly positive. b >= 1/2 keeps the boundary 1
/// inaccessible for the continuous process.
struct WFParams {
  double a = 0.5;
  double b = 0.5;

  WFParams() = default;
  WFParams(double a_in, double b_in);

  bool boundary_safe() const { return b >= 0.5; }
};

struct WFState {
  double x = 0.0;
};

/// Step size, horizon, seed, and path count for a simulation run.
struct SimConfig {
  double dt = 1e-3;
  double horizon = 1.0;
  std::uint64_t seed = 0;
  std::size_t n_paths = 1;

  void validate() const;
};

/// One Euler-Maruyama step with post-step clamping to [0,1]. The diffusion
/// coefficient vanishes at the boundary, so excursions outside are O(dt);
/// clamping keeps the state space at O(dt) bias.
inline double wf_step(double x, const WFParams& p, double dt, double z) noexcept {
  const double drift = p.a - (p.a + p.b) * x;
  double next = x + drift * dt + std::sqrt(x * (1.0 - x) * dt) * z;
  if (next < 0.0) next = 0.0;
  if (next > 1.0) next = 1.0;
  return next;
}

/// Number of Euler steps covering [0, horizon] at step dt.
std::size_t step_count(double horizon, double dt);

/// Endpoint of one path after ceil(horizon/dt) steps. Deterministic given
/// the stream. Emits a one-time warning when b < 1/2 (boundary 1 becomes
/// accessible; clamping still applies).
double wf_simulate(double x0, const WFParams& p, double dt, double horizon, RngStream& rng);

inline double wf_simulate(double x0, const WFParams& p, const SimConfig& cfg, RngStream& rng) {
  return wf_simulate(x0, p, cfg.dt, cfg.horizon, rng);
}

/// States sampled at the given times (ascending). The state at time t is the
/// one after ceil(t/dt) steps, consistent with wf_simulate.
std::vector<double> wf_simulate_path(double x0, const WFParams& p, double dt,
                                     std::span<const double> times, RngStream& rng);

/// Exact draw from the stationary law Beta(2a, 2b).
double stationary_sample(const WFParams& p, RngStream& rng);

/// Scale function s(x) = (1/4)^{a+b} * integral_{1/2}^{x} y^{-2a}(1-y)^{-2b} dy
/// for x in (0,1), adaptive quadrature with relative error <= 1e-8.
/// Diverges to +inf as x -> 1 when b >= 1/2. Throws QuadratureError on
/// non-convergence and std::invalid_argument outside (0,1).
double scale_function(const WFParams& p, double x);

/// exp(-(a+b) t) * (a - (a+b) x0): the exact mean of h(X_t) started at x0,
/// where h(x) = a - (a+b)x is the spectral-gap eigenfunction.
double linear_eigen_prediction(const WFParams& p, double x0, double t);

/// One-time warning sink (writes each distinct message to stderr once).
void warn_once(const std::string& message);

}  // namespace gemdiff
