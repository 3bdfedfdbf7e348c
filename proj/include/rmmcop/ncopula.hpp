#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rmmcop/bivariate.hpp"
#include "rmmcop/generator.hpp"

namespace rmmcop {

/// An evaluable n-copula, n >= 2.  Same conventions as BivariateCopula:
/// operator() clamps into the Frechet band, raw() does not.
class NCopula {
 public:
  using Eval = std::function<double(std::span<const double>)>;

  NCopula(int dim, Eval eval, std::string label);

  int dim() const { return dim_; }
  double operator()(std::span<const double> u) const;
  double raw(std::span<const double> u) const;
  const std::string& label() const { return label_; }

 private:
  int dim_;
  std::shared_ptr<const Eval> eval_;
  std::string label_;
};

NCopula independence_n(int dim);        // Pi_n
NCopula comonotone_n(int dim);          // M_n
NCopula from_bivariate(const BivariateCopula& c);

/// Inclusion-exclusion flip in the (0-based) coordinates idx: each flipped
/// coordinate u_i contributes the signed pair {1, 1-u_i}.
NCopula flip_vars(const NCopula& c, const std::vector<int>& idx);

/// Maxmin n-copula with p maxima (coordinates 0..p-1, F1 generators) and
/// n-p minima (F2 generators); 2^(n-p) inclusion-exclusion terms.
NCopula mm_n(const NCopula& base, const std::vector<MMGenerator>& gens, int p);

/// Reflected maxmin n-copula in closed form.  base_reflected is the base
/// already flipped in the min-linked coordinates p..n-1.
NCopula rmm_n(const NCopula& base_reflected, const std::vector<Generator>& gens,
              int p);

/// Explicit trivariate special case (p = 1); agrees with rmm_n(n=3, p=1).
NCopula rmm_3(const NCopula& base_reflected, const Generator& f1,
              const Generator& f2, const Generator& f3);

/// Mass the copula assigns to the box (lo, hi], by inclusion-exclusion over
/// the 2^n corners.
double n_box_volume(const NCopula& c, std::span<const double> lo,
                    std::span<const double> hi);

}  // namespace rmmcop
