#include "gemdiff/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gemdiff {

namespace {

std::vector<int> padded(const std::vector<int>& e, std::size_t dim) {
  std::vector<int> out = e;
  out.resize(dim, 0);
  return out;
}

}  // namespace

Polynomial Polynomial::constant(double c) {
  Polynomial p;
  if (c != 0.0) p.terms_.push_back({c, {}});
  return p;
}

Polynomial Polynomial::coordinate(std::size_t i) {
  Polynomial p;
  p.dim_ = i + 1;
  Term t;
  t.coeff = 1.0;
  t.exponents.assign(i + 1, 0);
  t.exponents[i] = 1;
  p.terms_.push_back(std::move(t));
  return p;
}

void Polynomial::normalize() {
  std::map<std::vector<int>, double> merged;
  for (const Term& t : terms_) {
    merged[padded(t.exponents, dim_)] += t.coeff;
  }
  terms_.clear();
  for (auto& [e, c] : merged) {
    if (c != 0.0) terms_.push_back({c, e});
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out;
  out.dim_ = std::max(dim_, o.dim_);
  for (const Term& t : terms_) out.terms_.push_back({t.coeff, padded(t.exponents, out.dim_)});
  for (const Term& t : o.terms_) out.terms_.push_back({t.coeff, padded(t.exponents, out.dim_)});
  out.normalize();
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + o * -1.0;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out;
  out.dim_ = std::max(dim_, o.dim_);
  for (const Term& s : terms_) {
    for (const Term& t : o.terms_) {
      Term prod;
      prod.coeff = s.coeff * t.coeff;
      prod.exponents = padded(s.exponents, out.dim_);
      const std::vector<int> te = padded(t.exponents, out.dim_);
      for (std::size_t i = 0; i < out.dim_; ++i) prod.exponents[i] += te[i];
      out.terms_.push_back(std::move(prod));
    }
  }
  out.normalize();
  return out;
}

Polynomial Polynomial::operator*(double c) const {
  Polynomial out = *this;
  for (Term& t : out.terms_) t.coeff *= c;
  out.normalize();
  return out;
}

double Polynomial::operator()(std::span<const double> y) const {
  double sum = 0.0;
  for (const Term& t : terms_) {
    double v = t.coeff;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      for (int k = 0; k < t.exponents[i]; ++k) v *= y[i];
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::partial(std::size_t i) const {
  Polynomial out;
  out.dim_ = dim_;
  for (const Term& t : terms_) {
    const std::vector<int> e = padded(t.exponents, dim_);
    if (i >= dim_ || e[i] == 0) continue;
    Term d;
    d.coeff = t.coeff * e[i];
    d.exponents = e;
    --d.exponents[i];
    out.terms_.push_back(std::move(d));
  }
  out.normalize();
  return out;
}

int Polynomial::degree() const {
  int deg = 0;
  for (const Term& t : terms_) {
    int d = 0;
    for (const int e : t.exponents) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

CylinderFunction CylinderFunction::from_polynomial(Polynomial p) {
  CylinderFunction f;
  f.dim_ = p.dim();
  f.poly_ = std::make_shared<const Polynomial>(std::move(p));
  f.grad_.reserve(f.dim_);
  for (std::size_t i = 0; i < f.dim_; ++i) f.grad_.push_back(f.poly_->partial(i));
  f.hess_.reserve(f.dim_ * f.dim_);
  for (std::size_t i = 0; i < f.dim_; ++i) {
    for (std::size_t j = 0; j < f.dim_; ++j) {
      f.hess_.push_back(f.grad_[i].partial(j));
    }
  }
  auto poly = f.poly_;
  f.eval_ = [poly](std::span<const double> y) { return (*poly)(y); };
  return f;
}

CylinderFunction CylinderFunction::generic(std::size_t dim,
                                           std::function<double(std::span<const double>)> eval,
                                           double fd_step) {
  CylinderFunction f;
  f.dim_ = dim;
  f.eval_ = std::move(eval);
  f.fd_step_ = fd_step;
  return f;
}

double CylinderFunction::value(std::span<const double> y) const {
  if (y.size() < dim_) {
    throw std::invalid_argument("CylinderFunction: point has fewer coordinates than dim");
  }
  return eval_(y.subspan(0, dim_));
}

double CylinderFunction::partial(std::size_t i, std::span<const double> y) const {
  if (i >= dim_) return 0.0;
  if (poly_) return grad_[i](y);
  std::vector<double> pt(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(dim_));
  const double h = fd_step_;
  pt[i] = y[i] + h;
  const double up = eval_(pt);
  pt[i] = y[i] - h;
  const double down = eval_(pt);
  return (up - down) / (2.0 * h);
}

double CylinderFunction::second_partial(std::size_t i, std::size_t j,
                                        std::span<const double> y) const {
  if (i >= dim_ || j >= dim_) return 0.0;
  if (poly_) return hess_[i * dim_ + j](y);
  std::vector<double> pt(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(dim_));
  const double h = fd_step_;
  if (i == j) {
    const double mid = eval_(pt);
    pt[i] = y[i] + h;
    const double up = eval_(pt);
    pt[i] = y[i] - h;
    const double down = eval_(pt);
    return (up - 2.0 * mid + down) / (h * h);
  }
  double sum = 0.0;
  for (const double si : {1.0, -1.0}) {
    for (const double sj : {1.0, -1.0}) {
      pt[i] = y[i] + si * h;
      pt[j] = y[j] + sj * h;
      sum += si * sj * eval_(pt);
    }
  }
  return sum / (4.0 * h * h);
}

namespace {

// Jacobian column of phi at x restricted to rows j >= i:
//   d phi_j / d x_i = prod_{l<i}(1-x_l)                    for j == i,
//   d phi_j / d x_i = -x_j * prod_{l<j, l != i}(1-x_l)     for j > i,
// evaluated without dividing by (1-x_i).
void phi_jacobian_column(std::span<const double> x, std::size_t i, std::size_t dim,
                         const std::vector<double>& prefix, std::vector<double>& out) {
  out.assign(dim, 0.0);
  out[i] = prefix[i];
  double q = prefix[i];  // prod_{l<j, l != i}(1-x_l), advanced with j
  for (std::size_t j = i + 1; j < dim; ++j) {
    out[j] = -x[j] * q;
    q *= 1.0 - x[j];
  }
}

std::vector<double> phi_prefix_products(std::span<const double> x, std::size_t dim) {
  std::vector<double> prefix(dim + 1);
  prefix[0] = 1.0;
  for (std::size_t l = 0; l < dim; ++l) prefix[l + 1] = prefix[l] * (1.0 - x[l]);
  return prefix;
}

std::vector<double> phi_prefix_to_weights(std::span<const double> x, std::size_t dim,
                                          const std::vector<double>& prefix) {
  std::vector<double> y(dim);
  for (std::size_t i = 0; i < dim; ++i) y[i] = x[i] * prefix[i];
  return y;
}

}  // namespace

StickFunction compose_with_phi(const CylinderFunction& f) {
  auto fn = std::make_shared<const CylinderFunction>(f);
  const std::size_t dim = f.dim();

  StickFunction h;
  h.dim = dim;
  h.value = [fn, dim](std::span<const double> x) {
    const auto prefix = phi_prefix_products(x, dim);
    const auto y = phi_prefix_to_weights(x, dim, prefix);
    return fn->value(y);
  };
  h.partial = [fn, dim](std::size_t i, std::span<const double> x) {
    if (i >= dim) return 0.0;
    const auto prefix = phi_prefix_products(x, dim);
    const auto y = phi_prefix_to_weights(x, dim, prefix);
    std::vector<double> col;
    phi_jacobian_column(x, i, dim, prefix, col);
    double sum = 0.0;
    for (std::size_t j = i; j < dim; ++j) sum += col[j] * fn->partial(j, y);
    return sum;
  };
  h.second_diag = [fn, dim](std::size_t i, std::span<const double> x) {
    if (i >= dim) return 0.0;
    // phi is multilinear, so d2 phi_j / d x_i^2 = 0 and only f's Hessian enters.
    const auto prefix = phi_prefix_products(x, dim);
    const auto y = phi_prefix_to_weights(x, dim, prefix);
    std::vector<double> col;
    phi_jacobian_column(x, i, dim, prefix, col);
    double sum = 0.0;
    for (std::size_t j = i; j < dim; ++j) {
      if (col[j] == 0.0) continue;
      for (std::size_t l = i; l < dim; ++l) {
        if (col[l] == 0.0) continue;
        sum += col[j] * col[l] * fn->second_partial(j, l, y);
      }
    }
    return sum;
  };
  return h;
}

StickFunction stick_function_generic(std::size_t dim,
                                     std::function<double(std::span<const double>)> eval,
                                     double fd_step) {
  auto fn = std::make_shared<const std::function<double(std::span<const double>)>>(std::move(eval));

  StickFunction h;
  h.dim = dim;
  h.value = [fn](std::span<const double> x) { return (*fn)(x); };
  h.partial = [fn, dim, fd_step](std::size_t i, std::span<const double> x) {
    if (i >= dim) return 0.0;
    std::vector<double> pt(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(dim));
    pt[i] = x[i] + fd_step;
    const double up = (*fn)(pt);
    pt[i] = x[i] - fd_step;
    const double down = (*fn)(pt);
    return (up - down) / (2.0 * fd_step);
  };
  h.second_diag = [fn, dim, fd_step](std::size_t i, std::span<const double> x) {
    if (i >= dim) return 0.0;
    std::vector<double> pt(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(dim));
    const double mid = (*fn)(pt);
    pt[i] = x[i] + fd_step;
    const double up = (*fn)(pt);
    pt[i] = x[i] - fd_step;
    const double down = (*fn)(pt);
    return (up - 2.0 * mid + down) / (fd_step * fd_step);
  };
  return h;
}

}  // namespace gemdiff
