#pragma once

// Smooth cylinder functions: functions of the first n simplex coordinates
// with evaluable first and second partials. The polynomial subclass carries
// exact derivatives; the generic subclass falls back to central finite
// differences with step 1e-5 (and should only meet tolerances >= 1e-4).

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace gemdiff {

/// Sparse multivariate polynomial over coordinates y_0..y_{dim-1}.
class Polynomial {
 public:
  struct Term {
    double coeff = 0.0;
    std::vector<int> exponents;  // length == dim of the polynomial
  };

  Polynomial() = default;

  static Polynomial constant(double c);
  static Polynomial coordinate(std::size_t i);  // y_i

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double c) const;
  Polynomial operator+(double c) const { return *this + constant(c); }
  Polynomial operator-(double c) const { return *this - constant(c); }

  double operator()(std::span<const double> y) const;
  Polynomial partial(std::size_t i) const;

  std::size_t dim() const { return dim_; }
  int degree() const;
  const std::vector<Term>& terms() const { return terms_; }

 private:
  void normalize();  // merge duplicate exponent vectors, drop zeros

  std::size_t dim_ = 0;
  std::vector<Term> terms_;
};

/// A function of the first dim() simplex coordinates together with first and
/// second partial derivatives.
class CylinderFunction {
 public:
  /// Exact-derivative subclass.
  static CylinderFunction from_polynomial(Polynomial p);

  /// Generic subclass; derivatives by central differences with the given step.
  static CylinderFunction generic(std::size_t dim,
                                  std::function<double(std::span<const double>)> eval,
                                  double fd_step = 1e-5);

  std::size_t dim() const { return dim_; }
  bool exact_derivatives() const { return poly_ != nullptr; }
  const Polynomial* polynomial() const { return poly_.get(); }

  double value(std::span<const double> y) const;
  double partial(std::size_t i, std::span<const double> y) const;
  double second_partial(std::size_t i, std::size_t j, std::span<const double> y) const;

 private:
  std::size_t dim_ = 0;
  std::function<double(std::span<const double>)> eval_;
  std::shared_ptr<const Polynomial> poly_;
  std::vector<Polynomial> grad_;
  std::vector<Polynomial> hess_;  // row-major dim x dim
  double fd_step_ = 1e-5;
};

/// A smooth function of the first dim stick coordinates, with first partials
/// and diagonal second partials (all the product-form generator needs).
struct StickFunction {
  std::size_t dim = 0;
  std::function<double(std::span<const double>)> value;
  std::function<double(std::size_t, std::span<const double>)> partial;
  std::function<double(std::size_t, std::span<const double>)> second_diag;
};

/// Pull a cylinder function back through the stick-breaking map: returns
/// h = f(phi(x)) with exact chain-rule derivatives. phi is multilinear in
/// the sticks, so second derivatives need only f's Hessian.
StickFunction compose_with_phi(const CylinderFunction& f);

/// Generic stick function with finite-difference derivatives.
StickFunction stick_function_generic(std::size_t dim,
                                     std::function<double(std::span<const double>)> eval,
                                     double fd_step = 1e-5);

}  // namespace gemdiff
