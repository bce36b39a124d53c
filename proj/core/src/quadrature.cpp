#include "gemdiff/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "gemdiff/errors.hpp"

namespace gemdiff {

namespace {

// 15-point Kronrod nodes on [-1,1] and weights, with the embedded 7-point
// Gauss weights on the odd-indexed nodes.
constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment evaluate(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double kronrod = kWeightsK[7] * f(center);
  double gauss = kWeightsG[3] * f(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWeightsK[i] * sum;
    if (i % 2 == 1) gauss += kWeightsG[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  if (!std::isfinite(kronrod)) {
    throw QuadratureError("integrand produced a non-finite value");
  }
  return {lo, hi, kronrod, std::fabs(kronrod - gauss)};
}

}  // namespace

double integrate_gk(const std::function<double(double)>& f, double lo, double hi,
                    double rel_tol, double abs_tol, int max_intervals) {
  if (lo == hi) return 0.0;
  double sign = 1.0;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1.0;
  }

  std::priority_queue<Segment> queue;
  queue.push(evaluate(f, lo, hi));
  double total = queue.top().value;
  double total_error = queue.top().error;

  int intervals = 1;
  while (total_error > std::max(abs_tol, rel_tol * std::fabs(total))) {
    if (intervals >= max_intervals) {
      throw QuadratureError("adaptive quadrature did not converge to tolerance");
    }
    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      throw QuadratureError("interval collapsed before reaching tolerance");
    }
    const Segment left = evaluate(f, worst.lo, mid);
    const Segment right = evaluate(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++intervals;
  }
  return sign * total;
}

}  // namespace gemdiff
