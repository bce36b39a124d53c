#include "gemdiff/wf.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>

#include "gemdiff/quadrature.hpp"

namespace gemdiff {

WFParams::WFParams(double a_in, double b_in) : a(a_in), b(b_in) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("WFParams: a and b must be strictly positive");
  }
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be positive");
  if (horizon < 0.0) throw std::invalid_argument("SimConfig: horizon must be nonnegative");
  if (horizon > 0.0 && dt > horizon) {
    throw std::invalid_argument("SimConfig: dt must not exceed the horizon");
  }
  if (n_paths == 0) throw std::invalid_argument("SimConfig: n_paths must be positive");
}

void warn_once(const std::string& message) {
  static std::mutex mutex;
  static std::set<std::string> seen;
  std::lock_guard<std::mutex> lock(mutex);
  if (seen.insert(message).second) {
    std::cerr << "warning: " << message << "\n";
  }
}

std::size_t step_count(double horizon, double dt) {
  if (horizon <= 0.0) return 0;
  // Guard against horizon/dt landing epsilon above an integer.
  return static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
}

double wf_simulate(double x0, const WFParams& p, double dt, double horizon, RngStream& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("wf_simulate: dt must be positive");
  if (!p.boundary_safe()) {
    warn_once("wf_simulate: b < 1/2, boundary 1 is accessible; clamped Euler steps proceed");
  }
  double x = x0;
  const std::size_t steps = step_count(horizon, dt);
  for (std::size_t s = 0; s < steps; ++s) {
    x = wf_step(x, p, dt, rng.normal());
  }
  return x;
}

std::vector<double> wf_simulate_path(double x0, const WFParams& p, double dt,
                                     std::span<const double> times, RngStream& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("wf_simulate_path: dt must be positive");
  std::vector<double> out;
  out.reserve(times.size());
  double x = x0;
  std::size_t done = 0;
  for (const double t : times) {
    const std::size_t target = step_count(t, dt);
    if (target < done) throw std::invalid_argument("wf_simulate_path: times must ascend");
    for (; done < target; ++done) x = wf_step(x, p, dt, rng.normal());
    out.push_back(x);
  }
  return out;
}

double stationary_sample(const WFParams& p, RngStream& rng) {
  return rng.beta(2.0 * p.a, 2.0 * p.b);
}

double scale_function(const WFParams& p, double x) {
  if (!(x > 0.0) || !(x < 1.0)) {
    throw std::invalid_argument("scale_function: x must lie in (0,1)");
  }
  const double prefactor = std::pow(0.25, p.a + p.b);
  const auto integrand = [&](double y) {
    return std::pow(y, -2.0 * p.a) * std::pow(1.0 - y, -2.0 * p.b);
  };
  return prefactor * integrate_gk(integrand, 0.5, x, 1e-8);
}

double linear_eigen_prediction(const WFParams& p, double x0, double t) {
  if (t < 0.0) throw std::invalid_argument("linear_eigen_prediction: t must be nonnegative");
  const double gap = p.a + p.b;
  return std::exp(-gap * t) * (p.a - gap * x0);
}

}  // namespace gemdiff
