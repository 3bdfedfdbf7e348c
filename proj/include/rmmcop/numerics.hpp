#pragma once

#include <cstddef>
#include <functional>

namespace rmmcop::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute; > tol signals non-convergence
  std::size_t evaluations = 0;
};

/// Integrates f over the unit square with a 32-point tensor Gauss-Legendre
/// rule and adaptive dyadic subdivision of cells whose refinement change
/// exceeds their share of tol.  max_depth < 0 picks a depth from tol.
QuadratureResult integrate2d(const std::function<double(double, double)>& f,
                             double tol, int max_depth = -1);

/// Symmetric difference quotient on [0,1]; one-sided at the boundary.
double central_diff(const std::function<double(double)>& f, double x, double h);

/// Leftmost x in [0,1] with cdf(x) >= t, found by bisection to within tol.
/// cdf must be nondecreasing; jumps and flats are allowed (an atom absorbs
/// the whole interval of t values it spans).  t outside [cdf(0), cdf(1)]
/// clamps to 0 or 1.
double invert_monotone(const std::function<double(double)>& cdf, double t,
                       double tol);

struct ProductResult {
  double value = 1.0;
  std::size_t terms_used = 0;
  bool converged = true;
};

/// Product of term(0), term(1), ... with terms in [0,1].  Stops once a term
/// vanishes, once 1 - term < tol (the tail of the associated series is then
/// negligible), or at max_terms; only the last case reports converged=false.
ProductResult truncated_product(const std::function<double(std::size_t)>& term,
                                double tol = 1e-12,
                                std::size_t max_terms = 10000);

}  // namespace rmmcop::numerics
