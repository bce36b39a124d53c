#pragma once

// The infinite-dimensional generator on the closed simplex,
//   L = sum_{i,j} a_ij(y) d2/dy_i dy_j + sum_i b_i(y) d/dy_i,
// its carre du champ Gamma, the pullback chain rule through the
// stick-breaking map, and the product-form generator L_n on stick space.
//
// Indices in this API are 0-based. Coefficients are evaluated through their
// exactly cancelled forms (every 0/0 summand resolved algebraically), which
// agree with the defining sums on interior points and extend them
// continuously to the boundary: a vanishing weight y_i forces a_ij = b_i = 0.

#include <cstddef>
#include <span>
#include <vector>

#include "gemdiff/cylinder.hpp"
#include "gemdiff/rng.hpp"
#include "gemdiff/stick.hpp"
#include "gemdiff/wf.hpp"

namespace gemdiff {

/// Truncated drift-parameter sequence (a_i, b_i), i = 1..n, together with
/// the infimum of a_i ^ b_i and of a_i + b_i over the full (possibly
/// infinite) family it truncates.
class ParamSeq {
 public:
  /// a_i = 1/2, b_i = theta/2 for all i.
  static ParamSeq one_parameter(double theta, std::size_t n);
  /// a_i = (1-alpha)/2, b_i = (theta + i*alpha)/2.
  static ParamSeq two_parameter(double alpha, double theta, std::size_t n);
  static ParamSeq constant(const WFParams& p, std::size_t n);
  /// Explicit finite family; infima taken over the given entries.
  static ParamSeq custom(std::vector<WFParams> pairs);
  /// Explicit prefix of an infinite family whose infima are known in closed
  /// form (e.g. a tail with a_i decreasing to 0).
  static ParamSeq custom_with_declared_inf(std::vector<WFParams> pairs, double inf_min_ab,
                                           double inf_sum_ab);

  std::size_t size() const { return pairs_.size(); }
  const WFParams& operator[](std::size_t i) const { return pairs_[i]; }
  double a(std::size_t i) const { return pairs_[i].a; }
  double b(std::size_t i) const { return pairs_[i].b; }

  double inf_min_ab() const { return inf_min_ab_; }
  double inf_sum_ab() const { return inf_sum_ab_; }
  bool boundary_safe() const;  // inf b_i >= 1/2 over the prefix

 private:
  std::vector<WFParams> pairs_;
  double inf_min_ab_ = 0.0;
  double inf_sum_ab_ = 0.0;
};

/// Per-point precomputation for coefficient evaluation: the tail chain
/// T_k = 1 - sum_{l<=k} y_l and the prefix sums S_i = sum_{k<i} y_k / T_k
/// shared by every a_ij at the point.
class CoeffContext {
 public:
  explicit CoeffContext(const SimplexPoint& y);

  double a(std::size_t i, std::size_t j) const;
  double b(const ParamSeq& p, std::size_t i) const;
  double sum_abs_a(std::size_t n) const;

  std::size_t size() const { return y_.size(); }
  const std::vector<double>& tails() const { return tail_; }
  std::span<const double> weights() const { return y_; }

 private:
  std::vector<double> y_;
  std::vector<double> tail_;   // tail[k] = remainder + sum_{j>=k} y_j
  std::vector<double> ratio_;  // ratio[i] = sum_{k<i} y_k / tail[k+1]
};

/// Diffusion coefficient a_ij at y (builds the context; use CoeffContext for
/// repeated queries at one point).
double coeff_a(const SimplexPoint& y, std::size_t i, std::size_t j);

/// Drift coefficient b_i at y for the parameter sequence p.
double coeff_b(const SimplexPoint& y, const ParamSeq& p, std::size_t i);

/// sum_{i,j < n} |a_ij(y)|; bounded by 3 on the whole closed simplex.
double coeff_bound(const SimplexPoint& y, std::size_t n);

/// Dense coefficient matrix and drift vector at a point.
struct GeneratorCoeffs {
  std::size_t n = 0;
  std::vector<double> a;  // n x n, row-major, symmetric
  std::vector<double> b;  // length n
};
GeneratorCoeffs generator_coeffs(const SimplexPoint& y, const ParamSeq& p, std::size_t n);

/// Carre du champ Gamma(f,g)(y) = sum_{i,j} a_ij df/dy_i dg/dy_j.
double carre_du_champ(const CylinderFunction& f, const CylinderFunction& g,
                      const SimplexPoint& y);
double carre_du_champ(const CylinderFunction& f, const CylinderFunction& g,
                      const CoeffContext& ctx);

/// (L f)(y) = sum a_ij d2f + sum b_i df.
double apply_generator(const CylinderFunction& f, const SimplexPoint& y, const ParamSeq& p);
double apply_generator(const CylinderFunction& f, const CoeffContext& ctx, const ParamSeq& p);

/// Gradient of f(phi(x)) in the stick coordinates,
///   d(f. phi)/dx_i = sum_{j>=i} (delta_ij - x_i) phi_j(x) / (x_i(1-x_i)) df/dy_j.
/// Throws BoundaryPoint when some stick coordinate is 0 or 1.
std::vector<double> pullback_gradient(const CylinderFunction& f, const StickPoint& x);

/// Product-form generator on stick space:
///   L_n h = sum_i x_i(1-x_i) d2h/dx_i^2 + sum_i (a_i - (a_i+b_i)x_i) dh/dx_i.
double apply_finite_generator(const StickFunction& h, const StickPoint& x, const ParamSeq& p);

/// Exact draw of the first n stick coordinates under the stationary product
/// law (stick i ~ Beta(2a_i, 2b_i)); requires n <= p.size().
StickPoint stationary_stick_sample(const ParamSeq& p, std::size_t n, RngStream& rng);

/// Exact draw of the stationary simplex law (phi of stationary sticks).
SimplexPoint stationary_simplex_sample(const ParamSeq& p, std::size_t n, RngStream& rng);

}  // namespace gemdiff
