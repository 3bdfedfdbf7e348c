#pragma once

#include <cstddef>
#include <stdexcept>

#include "rmmcop/bivariate.hpp"
#include "rmmcop/generator.hpp"

namespace rmmcop {

/// Raised when the infinite product of a limit copula fails to settle within
/// the term budget.
struct ProductTruncationError : std::runtime_error {
  ProductTruncationError(std::size_t terms, const std::string& what)
      : std::runtime_error(what), terms_used(terms) {}
  std::size_t terms_used;
};

/// One-step reflected transform:
///   uv * Cdot(fhat(u), ghat(v)) / (fhat(u) ghat(v)) * max{0, 1 - f*(u) g*(v)}
/// with value 0 on the axes (removable limit).
BivariateCopula rmm(const BivariateCopula& c_dot, const Generator& f,
                    const Generator& g);

/// One-step maxmin transform:
///   u + (C(phi(u), psi(v)) - phi(u)) * max{0, phi*(u) - psi_*(v)}
BivariateCopula mm(const BivariateCopula& c, const MMGenerator& phi,
                   const MMGenerator& psi);

/// Closed-form n-fold iterate of rmm; n = 0 returns c_dot.
BivariateCopula rmm_iter(const BivariateCopula& c_dot, const Generator& f,
                         const Generator& g, int n);

/// Closed-form n-fold iterate of mm; n = 0 returns c.
BivariateCopula mm_iter(const BivariateCopula& c, const MMGenerator& phi,
                        const MMGenerator& psi, int n);

/// Pointwise limit of the rmm iterates, evaluated corner-wise from the
/// fixed-point thresholds alpha(f) and alpha(g); tol drives the truncation of
/// the infinite product on the remaining corner.
BivariateCopula rmm_limit(const BivariateCopula& c_dot, const Generator& f,
                          const Generator& g, double tol = 1e-9);

/// Pointwise limit of the mm iterates (corner-wise closed form).
BivariateCopula mm_limit(const BivariateCopula& c, const MMGenerator& phi,
                         const MMGenerator& psi, double tol = 1e-9);

}  // namespace rmmcop
