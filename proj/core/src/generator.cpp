#include "gemdiff/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gemdiff/errors.hpp"

namespace gemdiff {

namespace {

std::vector<WFParams> gem_family(double alpha, double theta, std::size_t n) {
  // Validates the (alpha, theta) range as a side effect.
  GEMParams check(alpha, theta);
  std::vector<WFParams> pairs;
  pairs.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    pairs.emplace_back((1.0 - alpha) / 2.0, (theta + static_cast<double>(i) * alpha) / 2.0);
  }
  return pairs;
}

}  // namespace

ParamSeq ParamSeq::one_parameter(double theta, std::size_t n) {
  return two_parameter(0.0, theta, n);
}

ParamSeq ParamSeq::two_parameter(double alpha, double theta, std::size_t n) {
  if (n == 0) throw std::invalid_argument("ParamSeq: truncation must be positive");
  ParamSeq seq;
  seq.pairs_ = gem_family(alpha, theta, n);
  // b_i increases in i, a_i is constant: both infima sit at i = 1.
  const double a1 = seq.pairs_[0].a;
  const double b1 = seq.pairs_[0].b;
  seq.inf_min_ab_ = std::min(a1, b1);
  seq.inf_sum_ab_ = a1 + b1;
  return seq;
}

ParamSeq ParamSeq::constant(const WFParams& p, std::size_t n) {
  if (n == 0) throw std::invalid_argument("ParamSeq: truncation must be positive");
  ParamSeq seq;
  seq.pairs_.assign(n, p);
  seq.inf_min_ab_ = std::min(p.a, p.b);
  seq.inf_sum_ab_ = p.a + p.b;
  return seq;
}

ParamSeq ParamSeq::custom(std::vector<WFParams> pairs) {
  if (pairs.empty()) throw std::invalid_argument("ParamSeq: empty parameter list");
  ParamSeq seq;
  seq.pairs_ = std::move(pairs);
  seq.inf_min_ab_ = seq.pairs_[0].a;
  seq.inf_sum_ab_ = seq.pairs_[0].a + seq.pairs_[0].b;
  for (const WFParams& p : seq.pairs_) {
    seq.inf_min_ab_ = std::min(seq.inf_min_ab_, std::min(p.a, p.b));
    seq.inf_sum_ab_ = std::min(seq.inf_sum_ab_, p.a + p.b);
  }
  return seq;
}

ParamSeq ParamSeq::custom_with_declared_inf(std::vector<WFParams> pairs, double inf_min_ab,
                                            double inf_sum_ab) {
  ParamSeq seq = custom(std::move(pairs));
  if (inf_min_ab > seq.inf_min_ab_ || inf_sum_ab > seq.inf_sum_ab_) {
    throw std::invalid_argument("ParamSeq: declared infimum exceeds the prefix minimum");
  }
  seq.inf_min_ab_ = inf_min_ab;
  seq.inf_sum_ab_ = inf_sum_ab;
  return seq;
}

bool ParamSeq::boundary_safe() const {
  for (const WFParams& p : pairs_) {
    if (!p.boundary_safe()) return false;
  }
  return true;
}

CoeffContext::CoeffContext(const SimplexPoint& y) : y_(y.y), tail_(tail_chain(y)) {
  const std::size_t n = y_.size();
  ratio_.resize(n + 1);
  ratio_[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // y_i / T_i; tail_[i+1] may be 0 only when every later weight vanishes,
    // in which case the +inf propagates to ratios no guarded caller reads.
    ratio_[i + 1] = ratio_[i] + (y_[i] == 0.0 ? 0.0 : y_[i] / tail_[i + 1]);
  }
}

double CoeffContext::a(std::size_t i, std::size_t j) const {
  if (i >= y_.size() || j >= y_.size()) {
    throw std::invalid_argument("coeff_a: index beyond truncation");
  }
  const double yi = y_[i];
  const double yj = y_[j];
  // Every summand with a vanishing denominator also has a vanishing
  // numerator here; resolving those limits term by term leaves the
  // cancelled forms below, which vanish with y_i or y_j.
  if (yi == 0.0 || yj == 0.0) return 0.0;
  if (i == j) {
    return yi * tail_[i + 1] + yi * yi * ratio_[i];
  }
  const std::size_t lo = std::min(i, j);
  return yi * yj * (ratio_[lo] - 1.0);
}

double CoeffContext::b(const ParamSeq& p, std::size_t i) const {
  if (i >= y_.size()) throw std::invalid_argument("coeff_b: index beyond truncation");
  if (i >= p.size()) throw std::invalid_argument("coeff_b: index beyond parameter sequence");
  const double yi = y_[i];
  if (yi == 0.0) return 0.0;
  // k = i summand, cancelled against T_i: a_i T_{i-1} - (a_i + b_i) y_i.
  double value = p.a(i) * tail_[i] - (p.a(i) + p.b(i)) * yi;
  double sum = 0.0;
  for (std::size_t k = 0; k < i; ++k) {
    sum += (p.a(k) * tail_[k] - (p.a(k) + p.b(k)) * y_[k]) / tail_[k + 1];
  }
  return value - yi * sum;
}

double CoeffContext::sum_abs_a(std::size_t n) const {
  if (n > y_.size()) throw std::invalid_argument("coeff_bound: n beyond truncation");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      total += std::fabs(a(i, j));
    }
  }
  return total;
}

double coeff_a(const SimplexPoint& y, std::size_t i, std::size_t j) {
  return CoeffContext(y).a(i, j);
}

double coeff_b(const SimplexPoint& y, const ParamSeq& p, std::size_t i) {
  return CoeffContext(y).b(p, i);
}

double coeff_bound(const SimplexPoint& y, std::size_t n) {
  return CoeffContext(y).sum_abs_a(n);
}

GeneratorCoeffs generator_coeffs(const SimplexPoint& y, const ParamSeq& p, std::size_t n) {
  CoeffContext ctx(y);
  GeneratorCoeffs out;
  out.n = n;
  out.a.resize(n * n);
  out.b.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = ctx.a(i, j);
      out.a[i * n + j] = v;
      out.a[j * n + i] = v;
    }
    out.b[i] = ctx.b(p, i);
  }
  return out;
}

double carre_du_champ(const CylinderFunction& f, const CylinderFunction& g,
                      const CoeffContext& ctx) {
  const std::size_t m = std::max(f.dim(), g.dim());
  if (m > ctx.size()) {
    throw std::invalid_argument("carre_du_champ: function depends on more coordinates than the point carries");
  }
  const std::span<const double> ys = ctx.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double df = f.partial(i, ys);
    if (df == 0.0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      const double dg = g.partial(j, ys);
      if (dg == 0.0) continue;
      sum += ctx.a(i, j) * df * dg;
    }
  }
  return sum;
}

double carre_du_champ(const CylinderFunction& f, const CylinderFunction& g,
                      const SimplexPoint& y) {
  return carre_du_champ(f, g, CoeffContext(y));
}

double apply_generator(const CylinderFunction& f, const CoeffContext& ctx, const ParamSeq& p) {
  const std::size_t m = f.dim();
  if (m > ctx.size()) {
    throw std::invalid_argument("apply_generator: function depends on more coordinates than the point carries");
  }
  const std::span<const double> ys = ctx.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double h = f.second_partial(i, j, ys);
      if (h != 0.0) sum += ctx.a(i, j) * h;
    }
    const double d = f.partial(i, ys);
    if (d != 0.0) sum += ctx.b(p, i) * d;
  }
  return sum;
}

double apply_generator(const CylinderFunction& f, const SimplexPoint& y, const ParamSeq& p) {
  return apply_generator(f, CoeffContext(y), p);
}

std::vector<double> pullback_gradient(const CylinderFunction& f, const StickPoint& x) {
  const std::size_t m = f.dim();
  if (m > x.size()) {
    throw std::invalid_argument("pullback_gradient: function depends on more coordinates than the point carries");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (x.u[i] <= 0.0 || x.u[i] >= 1.0) {
      throw BoundaryPoint("pullback_gradient: stick coordinate " + std::to_string(i + 1) +
                          " on the boundary");
    }
  }
  const StickPoint prefix{std::vector<double>(x.u.begin(),
                                              x.u.begin() + static_cast<std::ptrdiff_t>(m))};
  const SimplexPoint y = phi(prefix);
  std::span<const double> ys(y.y);

  std::vector<double> grad(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    // (delta_ij - x_i) phi_j / (x_i (1 - x_i)) reduces to the two cases below.
    double q = 1.0;
    for (std::size_t l = 0; l < i; ++l) q *= 1.0 - x.u[l];
    double sum = q * f.partial(i, ys);  // j == i
    for (std::size_t j = i + 1; j < m; ++j) {
      sum += -x.u[j] * q * f.partial(j, ys);  // j > i
      q *= 1.0 - x.u[j];
    }
    grad[i] = sum;
  }
  return grad;
}

double apply_finite_generator(const StickFunction& h, const StickPoint& x, const ParamSeq& p) {
  if (h.dim > x.size()) {
    throw std::invalid_argument("apply_finite_generator: function depends on more coordinates than the point carries");
  }
  if (h.dim > p.size()) {
    throw std::invalid_argument("apply_finite_generator: parameter sequence shorter than the function dimension");
  }
  std::span<const double> xs(x.u);
  double sum = 0.0;
  for (std::size_t i = 0; i < h.dim; ++i) {
    const double xi = x.u[i];
    sum += xi * (1.0 - xi) * h.second_diag(i, xs);
    sum += (p.a(i) - (p.a(i) + p.b(i)) * xi) * h.partial(i, xs);
  }
  return sum;
}

StickPoint stationary_stick_sample(const ParamSeq& p, std::size_t n, RngStream& rng) {
  if (n > p.size()) {
    throw std::invalid_argument("stationary_stick_sample: n beyond parameter sequence");
  }
  StickPoint out;
  out.u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v;
    do {
      v = rng.beta(2.0 * p.a(i), 2.0 * p.b(i));
    } while (!(v < 1.0));
    out.u[i] = v;
  }
  return out;
}

SimplexPoint stationary_simplex_sample(const ParamSeq& p, std::size_t n, RngStream& rng) {
  return phi(stationary_stick_sample(p, n, rng));
}

}  // namespace gemdiff
