#pragma once

// Poincare and log-Sobolev constants for the simplex diffusion and nested
// Monte Carlo experiments checking the variance and entropy decay of the
// simulated semigroup against them.

#include <cstdint>
#include <string>
#include <vector>

#include "gemdiff/cylinder.hpp"
#include "gemdiff/generator.hpp"

namespace gemdiff {

/// Lower bound on the log-Sobolev constant: inf_i (a_i ^ b_i) / 320.
/// Throws NoUniformBound when inf_i (a_i ^ b_i) = 0.
double lsi_lower_bound(const ParamSeq& p);

/// Spectral-gap (Poincare) constant: inf_i (a_i + b_i).
double poincare_bound(const ParamSeq& p);

struct McEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
  std::size_t n = 0;
};

/// Monte Carlo estimate of the Dirichlet form E(f,f) = Xi(Gamma(f,f)) over
/// exact stationary samples at the given truncation.
McEstimate dirichlet_form_mc(const CylinderFunction& f, const ParamSeq& p,
                             std::size_t truncation, std::size_t n_samples, RngStream& rng);

/// Sizing of the nested Monte Carlo decay experiments: outer points drawn
/// from the stationary law, inner Euler paths estimating P_t f per point.
struct DecayConfig {
  std::size_t outer = 500;
  std::size_t inner = 2000;
  double dt = 1e-3;
  std::vector<double> t_grid = {0.5, 1.0};
  std::uint64_t seed = 0;
  int threads = 0;  // <= 0: resolve from environment / hardware
};

/// Outcome of a decay experiment. The observed quantity (variance of P_t f,
/// or entropy of P_t f) is compared against its analytic envelope at every
/// grid time; pass requires staying inside the envelope within 3 standard
/// errors and, for the rate, matching or beating the bound.
struct InequalityReport {
  std::string constant_name;
  double analytic_bound = 0.0;       // rate constant entering the envelope
  double empirical_rate = 0.0;
  double rate_stderr = 0.0;
  std::vector<double> t_grid;        // includes t = 0
  std::vector<double> observed;
  std::vector<double> observed_stderr;
  std::vector<double> envelope;
  bool pass = false;
  std::string note;
};

/// Variance decay: Var(P_t f) against Var(f) e^{-2 * poincare_bound * t}.
/// The inner-noise contribution to the variance of the conditional means is
/// subtracted, so the estimator is unbiased at every t.
/// Throws InsufficientSamples when a grid estimate has stderr > 20% of the
/// measured value.
InequalityReport variance_decay_experiment(const CylinderFunction& f, const ParamSeq& p,
                                           const DecayConfig& cfg);

/// Entropy decay: Xi(P_t f log P_t f) for f >= eps > 0 normalized to
/// Xi(f) = 1 (empirically), against Xi(f log f) e^{-4 * beta * t} with
/// beta = lsi_lower_bound(p). The weaker one-times-beta envelope is reported
/// alongside. Estimator uses the zero-mean control variate (u - 1) and a
/// first-order correction for inner-noise convexity bias.
InequalityReport entropy_decay_experiment(const CylinderFunction& f, const ParamSeq& p,
                                          const DecayConfig& cfg);

/// Mean decay of the exact eigenfunction h(y) = a_1 - (a_1+b_1) y_1 from a
/// stationary start: fits the L2-norm decay rate, which equals a_1 + b_1.
InequalityReport eigenfunction_rate_experiment(const ParamSeq& p, const DecayConfig& cfg);

}  // namespace gemdiff
