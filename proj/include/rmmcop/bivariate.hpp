#pragma once

#include <functional>
#include <memory>
#include <string>

namespace rmmcop {

/// An evaluable 2-copula.  Instances are immutable; transforms compose them
/// into expression trees evaluated lazily point by point.  operator() clamps
/// results into the Frechet-Hoeffding band to absorb roundoff; raw() does not
/// and is what the axiom checker looks at.
class BivariateCopula {
 public:
  using Eval = std::function<double(double, double)>;

  BivariateCopula(Eval eval, std::string label);

  double operator()(double u, double v) const;
  double raw(double u, double v) const;
  double diagonal(double t) const { return (*this)(t, t); }
  const std::string& label() const { return label_; }

 private:
  std::shared_ptr<const Eval> eval_;
  std::string label_;
};

struct Rectangle {
  double u_lo, u_hi, v_lo, v_hi;
  Rectangle(double ul, double uh, double vl, double vh);
};

/// C-volume of the rectangle (the mass a copula assigns to it).
double volume(const BivariateCopula& c, const Rectangle& rect);

struct AxiomReport {
  double worst_grounding = 0.0;  // max |C(u,0)|, |C(0,v)|
  double worst_margin = 0.0;     // max |C(u,1)-u|, |C(1,v)-v|
  double worst_volume = 0.0;     // most negative cell volume, as a magnitude
  double tol = 0.0;
  bool pass = false;
};

/// Grid check of groundedness, uniform margins and 2-increasingness on an
/// equispaced grid_n x grid_n grid.
AxiomReport validate_copula(const BivariateCopula& c, int grid_n, double tol);

BivariateCopula independence();              // Pi
BivariateCopula comonotone();                // M, upper Frechet bound
BivariateCopula countermonotone();           // W, lower Frechet bound
BivariateCopula efgm(double theta);          // theta in [-1,1]
BivariateCopula clayton(double theta);       // theta in [-1,inf), theta != 0

/// Factory keyed by family name ("pi", "m", "w", "efgm", "clayton").
BivariateCopula builtin(const std::string& name,
                        const std::vector<double>& params = {});

BivariateCopula flip_first(const BivariateCopula& c);   // v - C(1-u, v)
BivariateCopula flip_second(const BivariateCopula& c);  // u - C(u, 1-v)

}  // namespace rmmcop
