#pragma once

// The measure-valued process eta_t = sum_i X_i(t) delta_{xi_i(t)}: weights
// evolve as the simplex diffusion (via its stick coordinates), types follow
// an independent parent-independent-mutation jump process on S = [0,1].
// eta itself is generally non-Markovian; only the product state (X, xi) is
// simulated, and eta is always produced as its pushforward.

#include <span>
#include <string>
#include <vector>

#include "gemdiff/generator.hpp"
#include "gemdiff/rng.hpp"
#include "gemdiff/stick.hpp"

namespace gemdiff {

/// Types of the first n families.
struct TypeVector {
  std::vector<double> xi;

  std::size_t size() const { return xi.size(); }
};

/// Weight prefix plus matching type prefix.
struct EtaState {
  SimplexPoint weights;
  TypeVector types;

  void validate() const;
};

/// Parent-independent mutation over one time step: each coordinate is
/// refreshed from nu independently with probability 1 - e^{-theta dt / 2}
/// (exact thinning of the rate theta/2 jump process).
TypeVector mutation_step(const TypeVector& types, double theta, const TypeSampler& nu,
                         double dt, RngStream& rng);

/// psi(x, xi) = sum_i x_i delta_{xi_i}. Coincident types are not merged; the
/// atom multiset is preserved.
DiscreteMeasure pushforward_psi(const EtaState& s);

/// integral of g against the measure: sum_i w_i g(s_i). The truncation
/// remainder contributes nothing and biases the value by at most
/// sup|g| * remainder; a one-time warning fires when remainder > 1e-3.
double integrate(const DiscreteMeasure& m, const std::function<double(double)>& g);

struct EtaSnapshot {
  double t = 0.0;
  DiscreteMeasure measure;
};

/// Stationary initial state: weights drawn exactly from the stationary
/// simplex law of p, types i.i.d. from nu.
EtaState stationary_eta_state(const ParamSeq& p, const TypeSampler& nu, std::size_t n,
                              RngStream& rng);

/// Euler path of the product process. Per time step every weight coordinate
/// takes one diffusion step and every type one mutation step; snapshots are
/// pushforwards at the requested times (ascending, in units of t).
/// Deterministic given the stream.
std::vector<EtaSnapshot> simulate_eta(const EtaState& initial, const ParamSeq& p,
                                      double theta_mut, const TypeSampler& nu, double dt,
                                      std::span<const double> snapshot_times, RngStream& rng);

/// One snapshot as a JSON line: {"t": ..., "atoms": [[w, s], ...], "remainder": ...}
std::string to_json_line(const EtaSnapshot& snap);

}  // namespace gemdiff
