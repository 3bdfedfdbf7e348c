#include "rmmcop/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace rmmcop::numerics {

namespace {

constexpr int kGlOrder = 32;

struct GlRule {
  std::array<double, kGlOrder> node{};    // on [0,1]
  std::array<double, kGlOrder> weight{};  // sum to 1
};

// Nodes from the Legendre recurrence, polished by Newton iteration.
GlRule make_gl_rule() {
  GlRule rule;
  const int n = kGlOrder;
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    double z1 = 0.0, pp = 0.0;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::abs(z - z1) > 1e-15);
    rule.node[i - 1] = 0.5 * (1.0 - z);
    rule.node[n - i] = 0.5 * (1.0 + z);
    rule.weight[i - 1] = 1.0 / ((1.0 - z * z) * pp * pp);
    rule.weight[n - i] = rule.weight[i - 1];
  }
  return rule;
}

const GlRule& gl_rule() {
  static const GlRule rule = make_gl_rule();
  return rule;
}

struct Integrator {
  const std::function<double(double, double)>& f;
  double tol;
  int max_depth;
  std::size_t evaluations = 0;
  double error = 0.0;

  double cell_estimate(double u0, double w, double v0, double h) {
    const GlRule& rule = gl_rule();
    double sum = 0.0;
    for (int i = 0; i < kGlOrder; ++i) {
      const double u = u0 + w * rule.node[i];
      double row = 0.0;
      for (int j = 0; j < kGlOrder; ++j)
        row += rule.weight[j] * f(u, v0 + h * rule.node[j]);
      sum += rule.weight[i] * row;
    }
    evaluations += std::size_t(kGlOrder) * kGlOrder;
    return sum * w * h;
  }

  // coarse is this cell's single-rule estimate, already computed by the caller
  double refine(double u0, double w, double v0, double h, double coarse,
                int depth) {
    const double w2 = 0.5 * w, h2 = 0.5 * h;
    const double q00 = cell_estimate(u0, w2, v0, h2);
    const double q10 = cell_estimate(u0 + w2, w2, v0, h2);
    const double q01 = cell_estimate(u0, w2, v0 + h2, h2);
    const double q11 = cell_estimate(u0 + w2, w2, v0 + h2, h2);
    const double fine = q00 + q10 + q01 + q11;
    const double diff = std::abs(fine - coarse);
    if (diff <= tol * w * h) {
      error += diff;
      return fine;
    }
    if (depth >= max_depth) {
      // residual of a capped cell shrinks roughly geometrically; count it twice
      error += 2.0 * diff;
      return fine;
    }
    return refine(u0, w2, v0, h2, q00, depth + 1) +
           refine(u0 + w2, w2, v0, h2, q10, depth + 1) +
           refine(u0, w2, v0 + h2, h2, q01, depth + 1) +
           refine(u0 + w2, w2, v0 + h2, h2, q11, depth + 1);
  }
};

}  // namespace

QuadratureResult integrate2d(const std::function<double(double, double)>& f,
                             double tol, int max_depth) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate2d: tol must be > 0");
  if (max_depth < 0) {
    // deep enough that cells pinned on a discontinuity stop contributing
    max_depth = std::clamp(int(std::ceil(std::log2(0.06 / tol))), 4, 12);
  }
  Integrator integ{f, tol, max_depth};
  const double coarse = integ.cell_estimate(0.0, 1.0, 0.0, 1.0);
  QuadratureResult result;
  result.value = integ.refine(0.0, 1.0, 0.0, 1.0, coarse, 0);
  result.error_estimate = integ.error;
  result.evaluations = integ.evaluations;
  return result;
}

double central_diff(const std::function<double(double)>& f, double x,
                    double h) {
  if (!(h > 0.0)) throw std::invalid_argument("central_diff: h must be > 0");
  const double lo = std::max(0.0, x - h);
  const double hi = std::min(1.0, x + h);
  if (hi <= lo) return 0.0;
  return (f(hi) - f(lo)) / (hi - lo);
}

double invert_monotone(const std::function<double(double)>& cdf, double t,
                       double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("invert_monotone: tol must be > 0");
  if (cdf(0.0) >= t) return 0.0;
  if (cdf(1.0) < t) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) >= t)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

ProductResult truncated_product(const std::function<double(std::size_t)>& term,
                                double tol, std::size_t max_terms) {
  ProductResult result;
  result.converged = false;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const double a = std::clamp(term(k), 0.0, 1.0);
    result.value *= a;
    ++result.terms_used;
    if (a == 0.0) {
      result.value = 0.0;
      result.converged = true;
      break;
    }
    if (1.0 - a < tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace rmmcop::numerics
