#include "gemdiff/stick.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gemdiff/errors.hpp"

namespace gemdiff {

namespace {

double kahan_sum(const std::vector<double>& v, double extra) {
  double sum = extra;
  double c = 0.0;
  for (const double x : v) {
    const double t = x - c;
    const double s = sum + t;
    c = (s - sum) - t;
    sum = s;
  }
  return sum;
}

}  // namespace

void StickPoint::validate() const {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] >= 0.0) || !(u[i] < 1.0)) {
      throw std::invalid_argument("StickPoint: coordinate " + std::to_string(i + 1) +
                                  " outside [0,1)");
    }
  }
}

void SimplexPoint::validate() const {
  if (remainder < 0.0) throw std::invalid_argument("SimplexPoint: negative remainder");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] >= 0.0)) {
      throw std::invalid_argument("SimplexPoint: negative weight at index " +
                                  std::to_string(i + 1));
    }
  }
  const double mass = kahan_sum(y, remainder);
  if (std::fabs(mass - 1.0) > 1e-12) {
    throw std::invalid_argument("SimplexPoint: mass " + std::to_string(mass) +
                                " deviates from 1 by more than 1e-12");
  }
}

std::vector<double> tail_chain(const SimplexPoint& p) {
  const std::size_t n = p.size();
  std::vector<double> tail(n + 1);
  tail[n] = p.remainder;
  for (std::size_t k = n; k-- > 0;) {
    tail[k] = tail[k + 1] + p.y[k];
  }
  return tail;
}

SimplexPoint phi(const StickPoint& x) {
  x.validate();
  SimplexPoint out;
  out.y.resize(x.size());
  double stick_left = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.y[i] = x.u[i] * stick_left;
    stick_left *= 1.0 - x.u[i];
  }
  out.remainder = stick_left;
  return out;
}

StickPoint phi_inverse(const SimplexPoint& p) {
  p.validate();
  const std::vector<double> tail = tail_chain(p);
  StickPoint out;
  out.u.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    // tail[i] = 1 - sum_{l<i} y_l up to rounding.
    if (!(tail[i] > 0.0)) {
      throw BoundaryPoint("phi_inverse: partial sums reach 1 before coordinate " +
                          std::to_string(i + 1));
    }
    const double u = p.y[i] / tail[i];
    if (u >= 1.0) {
      throw BoundaryPoint("phi_inverse: stick coordinate " + std::to_string(i + 1) +
                          " would equal 1");
    }
    out.u[i] = u;
  }
  return out;
}

GEMParams::GEMParams(double alpha_in, double theta_in) : alpha(alpha_in), theta(theta_in) {
  if (!(alpha >= 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("GEMParams: alpha must lie in [0,1)");
  }
  if (!(theta + alpha > 0.0)) {
    throw std::invalid_argument("GEMParams: theta + alpha must be positive");
  }
}

StickPoint sample_gem_sticks(const GEMParams& p, std::size_t n, RngStream& rng) {
  StickPoint out;
  out.u.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double v;
    do {
      v = rng.beta(1.0 - p.alpha, p.theta + static_cast<double>(k + 1) * p.alpha);
    } while (!(v < 1.0));
    out.u[k] = v;
  }
  return out;
}

SimplexPoint sample_gem(const GEMParams& p, std::size_t n, RngStream& rng) {
  return phi(sample_gem_sticks(p, n, rng));
}

SimplexPoint descending_order(const SimplexPoint& p) {
  SimplexPoint out = p;
  std::stable_sort(out.y.begin(), out.y.end(), std::greater<double>());
  return out;
}

SimplexPoint size_biased_permutation(const SimplexPoint& p, RngStream& rng) {
  if (p.remainder > 0.01) {
    throw MassDeficit("size_biased_permutation: remainder " + std::to_string(p.remainder) +
                      " exceeds 0.01");
  }
  const std::size_t n = p.size();
  std::vector<std::size_t> alive(n);
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  double mass_left = 0.0;
  for (const double w : p.y) mass_left += w;

  SimplexPoint out;
  out.y.reserve(n);
  out.remainder = p.remainder;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t chosen = alive.size() - 1;
    if (mass_left > 0.0) {
      const double target = rng.uniform() * mass_left;
      double acc = 0.0;
      for (std::size_t k = 0; k < alive.size(); ++k) {
        acc += p.y[alive[k]];
        if (target < acc) {
          chosen = k;
          break;
        }
      }
    }
    const std::size_t idx = alive[chosen];
    out.y.push_back(p.y[idx]);
    mass_left -= p.y[idx];
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(chosen));
  }
  return out;
}

TypeSampler uniform_type_sampler() {
  return [](RngStream& rng) { return rng.uniform(); };
}

double DiscreteMeasure::total_weight() const {
  double sum = 0.0;
  double c = 0.0;
  for (const Atom& a : atoms) {
    const double t = a.weight - c;
    const double s = sum + t;
    c = (s - sum) - t;
    sum = s;
  }
  return sum;
}

DiscreteMeasure sample_dirichlet_measure(const GEMParams& p, const TypeSampler& nu,
                                         std::size_t n, RngStream& rng) {
  const SimplexPoint weights = sample_gem(p, n, rng);
  DiscreteMeasure out;
  out.atoms.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.atoms[i].weight = weights.y[i];
    out.atoms[i].type = nu(rng);
  }
  out.remainder = weights.remainder;
  return out;
}

double esf_probability(const std::vector<int>& block_sizes, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("esf_probability: theta must be positive");
  if (block_sizes.empty()) throw std::invalid_argument("esf_probability: empty partition");
  int n = 0;
  for (const int b : block_sizes) {
    if (b < 1) throw std::invalid_argument("esf_probability: block sizes must be >= 1");
    n += b;
  }
  // counts[j] = number of blocks of size j
  std::vector<int> counts(static_cast<std::size_t>(n) + 1, 0);
  for (const int b : block_sizes) ++counts[static_cast<std::size_t>(b)];

  double log_p = std::lgamma(static_cast<double>(n) + 1.0);
  for (int i = 0; i < n; ++i) {
    log_p -= std::log(theta + static_cast<double>(i));
  }
  const double log_theta = std::log(theta);
  for (int j = 1; j <= n; ++j) {
    const int aj = counts[static_cast<std::size_t>(j)];
    if (aj == 0) continue;
    log_p += aj * (log_theta - std::log(static_cast<double>(j)));
    log_p -= std::lgamma(static_cast<double>(aj) + 1.0);
  }
  return std::exp(log_p);
}

}  // namespace gemdiff
