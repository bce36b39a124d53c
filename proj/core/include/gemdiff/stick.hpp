#pragma once

// Stick-breaking transform between E = [0,1)^N and the closed infinite
// simplex, exact GEM samplers (one- and two-parameter), descending
// rearrangement, size-biased permutation, Dirichlet random measures, and the
// Ewens sampling formula. Infinite sequences are carried as length-n
// prefixes with an explicit remainder so mass conservation stays testable.

#include <functional>
#include <vector>

#include "gemdiff/rng.hpp"

namespace gemdiff {

/// Prefix of a point of E = [0,1)^N: every coordinate in [0,1).
struct StickPoint {
  std::vector<double> u;

  std::size_t size() const { return u.size(); }
  void validate() const;
};

/// Prefix of a point of the closed simplex: nonnegative weights plus the
/// truncated tail mass. Weights and remainder sum to 1 within 1e-12.
struct SimplexPoint {
  std::vector<double> y;
  double remainder = 0.0;

  std::size_t size() const { return y.size(); }
  void validate() const;
};

/// tail[k] = remainder + sum_{j >= k} y_j for k = 0..n. tail[0] is the total
/// mass (1 up to rounding) and tail[n] the remainder. Accumulated right to
/// left so the near-boundary values 1 - sum_{l <= k} y_l are formed without
/// catastrophic cancellation.
std::vector<double> tail_chain(const SimplexPoint& p);

/// Stick-breaking map: y_i = u_i * prod_{l<i}(1 - u_l), remainder the
/// leftover product.
SimplexPoint phi(const StickPoint& x);

/// Inverse map x_i = y_i / (1 - sum_{l<i} y_l). Throws BoundaryPoint when a
/// partial sum reaches 1 before the end of the prefix.
StickPoint phi_inverse(const SimplexPoint& p);

/// Two-parameter GEM family: stick k is Beta(1-alpha, theta + k*alpha);
/// alpha = 0 gives the one-parameter family (then theta > 0).
struct GEMParams {
  double alpha = 0.0;
  double theta = 1.0;

  GEMParams() = default;
  GEMParams(double alpha_in, double theta_in);
};

/// The first n stick variables V_k ~ Beta(1-alpha, theta + k*alpha), drawn
/// exactly (no SDE involved).
StickPoint sample_gem_sticks(const GEMParams& p, std::size_t n, RngStream& rng);

/// Exact draw of the first n GEM weights (phi of sample_gem_sticks).
SimplexPoint sample_gem(const GEMParams& p, std::size_t n, RngStream& rng);

/// Weights sorted in descending order (stable: ties keep original order);
/// remainder unchanged.
SimplexPoint descending_order(const SimplexPoint& p);

/// Random reordering where each next index is chosen with probability
/// proportional to its weight among the remaining ones. Throws MassDeficit
/// when remainder > 0.01.
SimplexPoint size_biased_permutation(const SimplexPoint& p, RngStream& rng);

/// Sampler for a type drawn from a diffuse law on S = [0,1].
using TypeSampler = std::function<double(RngStream&)>;

/// nu = Uniform[0,1], the default type law.
TypeSampler uniform_type_sampler();

/// Atomic measure sum_i w_i delta_{s_i} with tracked truncation remainder.
struct DiscreteMeasure {
  struct Atom {
    double weight = 0.0;
    double type = 0.0;
  };
  std::vector<Atom> atoms;
  double remainder = 0.0;

  double total_weight() const;
};

/// Random measure with GEM(p) weights and i.i.d. nu types, paired
/// positionally. Its law is Dirichlet(theta, nu) when alpha = 0.
DiscreteMeasure sample_dirichlet_measure(const GEMParams& p, const TypeSampler& nu,
                                         std::size_t n, RngStream& rng);

/// Ewens sampling formula: probability of the allelic partition with the
/// given block sizes in a sample of size n = sum(block_sizes) from a
/// Dirichlet(theta, nu) population,
///   n! / theta_(n) * prod_j (theta/j)^{a_j} / a_j!,
/// with theta_(n) the rising factorial and a_j the number of blocks of size j.
double esf_probability(const std::vector<int>& block_sizes, double theta);

}  // namespace gemdiff
