#include "gemdiff/measure.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gemdiff/errors.hpp"
#include "gemdiff/wf.hpp"

namespace gemdiff {

void EtaState::validate() const {
  weights.validate();
  if (weights.size() != types.size()) {
    throw std::invalid_argument("EtaState: weight and type prefixes differ in length");
  }
}

TypeVector mutation_step(const TypeVector& types, double theta, const TypeSampler& nu,
                         double dt, RngStream& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("mutation_step: dt must be positive");
  if (theta < 0.0) throw std::invalid_argument("mutation_step: theta must be nonnegative");
  const double jump_prob = -std::expm1(-0.5 * theta * dt);
  TypeVector out = types;
  for (double& type : out.xi) {
    if (rng.uniform() < jump_prob) type = nu(rng);
  }
  return out;
}

DiscreteMeasure pushforward_psi(const EtaState& s) {
  s.validate();
  DiscreteMeasure out;
  out.atoms.resize(s.weights.size());
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    out.atoms[i].weight = s.weights.y[i];
    out.atoms[i].type = s.types.xi[i];
  }
  out.remainder = s.weights.remainder;
  return out;
}

double integrate(const DiscreteMeasure& m, const std::function<double(double)>& g) {
  if (m.remainder > 1e-3) {
    warn_once("integrate: remainder above 1e-3; integral biased by up to sup|g| * remainder");
  }
  double sum = 0.0;
  double c = 0.0;
  for (const DiscreteMeasure::Atom& a : m.atoms) {
    const double term = a.weight * g(a.type);
    const double t = term - c;
    const double s = sum + t;
    c = (s - sum) - t;
    sum = s;
  }
  return sum;
}

EtaState stationary_eta_state(const ParamSeq& p, const TypeSampler& nu, std::size_t n,
                              RngStream& rng) {
  EtaState state;
  state.weights = stationary_simplex_sample(p, n, rng);
  state.types.xi.resize(n);
  for (double& type : state.types.xi) type = nu(rng);
  return state;
}

std::vector<EtaSnapshot> simulate_eta(const EtaState& initial, const ParamSeq& p,
                                      double theta_mut, const TypeSampler& nu, double dt,
                                      std::span<const double> snapshot_times, RngStream& rng) {
  initial.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("simulate_eta: dt must be positive");
  const std::size_t n = initial.weights.size();
  if (n > p.size()) {
    throw std::invalid_argument("simulate_eta: state longer than the parameter sequence");
  }
  if (!p.boundary_safe()) {
    warn_once("simulate_eta: some b_i < 1/2, boundary 1 is accessible; clamped Euler steps proceed");
  }

  // Evolve the stick coordinates; weights are their stick-breaking image.
  StickPoint sticks = phi_inverse(initial.weights);
  TypeVector types = initial.types;
  const double jump_prob = -std::expm1(-0.5 * theta_mut * dt);

  std::vector<std::size_t> targets;
  targets.reserve(snapshot_times.size());
  for (std::size_t g = 0; g < snapshot_times.size(); ++g) {
    if (g > 0 && !(snapshot_times[g] > snapshot_times[g - 1])) {
      throw std::invalid_argument("simulate_eta: snapshot times must ascend strictly");
    }
    targets.push_back(step_count(snapshot_times[g], dt));
  }

  std::vector<EtaSnapshot> out;
  out.reserve(snapshot_times.size());
  const auto snapshot = [&](std::size_t g) {
    EtaSnapshot snap;
    snap.t = snapshot_times[g];
    snap.measure.atoms.resize(n);
    double left = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      snap.measure.atoms[i].weight = sticks.u[i] * left;
      left *= 1.0 - sticks.u[i];
      snap.measure.atoms[i].type = types.xi[i];
    }
    snap.measure.remainder = left;
    out.push_back(std::move(snap));
  };

  std::size_t g = 0;
  while (g < targets.size() && targets[g] == 0) snapshot(g++);
  const std::size_t total_steps = targets.empty() ? 0 : targets.back();
  for (std::size_t step = 1; step <= total_steps; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      sticks.u[i] = wf_step(sticks.u[i], p[i], dt, rng.normal());
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform() < jump_prob) types.xi[i] = nu(rng);
    }
    while (g < targets.size() && targets[g] == step) snapshot(g++);
  }
  return out;
}

std::string to_json_line(const EtaSnapshot& snap) {
  std::string out;
  out.reserve(32 + snap.measure.atoms.size() * 48);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "{\"t\":%.17g,\"atoms\":[", snap.t);
  out += buf;
  for (std::size_t i = 0; i < snap.measure.atoms.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s[%.17g,%.17g]", i == 0 ? "" : ",",
                  snap.measure.atoms[i].weight, snap.measure.atoms[i].type);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "],\"remainder\":%.17g}", snap.measure.remainder);
  out += buf;
  return out;
}

}  // namespace gemdiff
