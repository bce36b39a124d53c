#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gemdiff {

/// Streaming moment accumulator (up to fourth power sums). Values are O(1)
/// in this codebase, so plain power sums in double are accurate enough.
class Moments {
 public:
  void add(double x) {
    ++n_;
    s1_ += x;
    s2_ += x * x;
    s3_ += x * x * x;
    s4_ += x * x * x * x;
  }
  void merge(const Moments& o) {
    n_ += o.n_;
    s1_ += o.s1_;
    s2_ += o.s2_;
    s3_ += o.s3_;
    s4_ += o.s4_;
  }
  std::size_t count() const { return n_; }
  double mean() const;
  double variance() const;        // unbiased
  double stderr_mean() const;     // sd / sqrt(n)
  double central_moment4() const;
  double stderr_variance() const; // sqrt((m4 - var^2)/n)

 private:
  std::size_t n_ = 0;
  double s1_ = 0, s2_ = 0, s3_ = 0, s4_ = 0;
};

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
/// The sample is sorted internally.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Critical value c(alpha) * sqrt((n+m)/(n*m)) for the two-sample test;
/// c(0.01) = sqrt(-ln(0.005)/2).
double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha);

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation, accurate to ~1e-14 over the parameter ranges used here.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of the Beta(a, b) distribution at x.
inline double beta_cdf(double a, double b, double x) {
  return regularized_incomplete_beta(a, b, x);
}

/// Smallest eigenvalue of a symmetric n x n matrix (row-major), via cyclic
/// Jacobi rotations. Intended for the small coefficient matrices (n <= 64).
double min_eigenvalue_symmetric(std::vector<double> matrix, int n);

}  // namespace gemdiff
