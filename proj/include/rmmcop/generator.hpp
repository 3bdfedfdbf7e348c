#pragma once

#include <array>
#include <string>
#include <vector>

namespace rmmcop {

/// Generating function f of the reflected shock-model transform, with the
/// auxiliaries f*(u) = f(u)/u and fhat(u) = u + f(u) and the fixed-point
/// threshold alpha (smallest u with f identically zero on [u,1]).
///
/// f(0) != 0 is tolerated and merely flagged: the transform stays a copula
/// because f*(0+) = +inf then forces a zero band along the axes.
class Generator {
 public:
  static Generator power(double a);                  // u^(1-a) - u, a in (0,1)
  static Generator scaled_complement(double c);      // c(1-u),      c in (0,1]
  static Generator quadratic(double c);              // c u(1-u),    c in (0,1]
  static Generator tent();                           // min(u, 1-u)
  static Generator trunc_linear(double c, double s); // c max(0, s-u)
  static Generator zero();
  /// Piecewise-linear rule through (x,y) knots; x ascending from 0 to 1.
  /// Throws if the monotonicity conditions fail at knots or midpoints.
  static Generator tabulated(std::vector<std::array<double, 2>> knots);

  double f(double u) const;
  double f_star(double u) const;  // +inf at 0 when f(0) > 0
  double f_hat(double u) const;
  double f_hat_iter(double u, int n) const;
  /// Pointwise limit of the fhat iterates: 0 at 0, alpha on (0,alpha), u above.
  double f_hat_limit(double u) const;
  double alpha() const { return alpha_; }
  bool star_infinite_at_zero() const;
  const std::string& label() const { return label_; }

  struct Validation {
    bool pass = true;
    bool f_at_zero_nonzero = false;  // flagged, not a failure
    double f_at_zero = 0.0;
    double worst_boundary = 0.0;      // |f(1)| and |f*(1)|
    double worst_hat_decrease = 0.0;  // fhat must be nondecreasing
    double worst_star_increase = 0.0; // f* must be nonincreasing on (0,1]
  };
  Validation validate(int grid_n, double tol) const;

 private:
  enum class Family {
    kPower,
    kScaledComplement,
    kQuadratic,
    kTent,
    kTruncLinear,
    kZero,
    kTabulated
  };
  Generator(Family family, double p0, double p1, std::string label);

  Family family_;
  double p0_ = 0.0, p1_ = 0.0;
  std::vector<std::array<double, 2>> knots_;
  double alpha_ = 0.0;
  std::string label_;
};

/// Smallest u with f vanishing on [u,1], located by scanning an equispaced
/// grid and bisecting the boundary of the zero set.  Families carry exact
/// values; this is the generic fallback (and a cross-check).
double compute_alpha(const Generator& g, int grid_n);

enum class MMKind { F1, F2 };

/// A maxmin-side generating function, stored through its reflected rule f:
/// F1 holds phi(u) = u + f(u), F2 holds psi(v) = v - f(1-v).  map() evaluates
/// the generating function itself and star() the matching auxiliary
/// (phi* = id/phi for F1, the lower star psi_* for F2).
class MMGenerator {
 public:
  static MMGenerator f1(Generator rule);
  static MMGenerator f2(Generator rule);
  static MMGenerator identity(MMKind kind);

  MMKind kind() const { return kind_; }
  const Generator& rule() const { return rule_; }
  double map(double u) const;
  double star(double u) const;
  std::string label() const;

 private:
  MMGenerator(MMKind kind, Generator rule);
  MMKind kind_;
  Generator rule_;
};

/// Conversions between the two generator presentations.  Both validate the
/// monotone class conditions on a grid and throw on violation; map(0) != 0
/// (F1) and map(1) != 1 (F2) follow the same flagged-exception policy as
/// Generator::validate.
Generator from_mm(const MMGenerator& m);
MMGenerator to_mm(const Generator& g, MMKind kind);

}  // namespace rmmcop
