#include "rmmcop/transforms.hpp"

#include <cmath>
#include <string>

#include "rmmcop/numerics.hpp"

namespace rmmcop {

namespace {

void require_valid(const Generator& g) {
  const auto v = g.validate(201, 1e-9);
  if (!v.pass)
    throw std::invalid_argument("generator '" + g.label() +
                                "' violates the class conditions");
}

void require_kinds(const MMGenerator& phi, const MMGenerator& psi) {
  if (phi.kind() != MMKind::F1 || psi.kind() != MMKind::F2)
    throw std::invalid_argument("mm: phi must be F1 and psi must be F2");
}

// max{0, 1 - f*(u) g*(v)} with the infinite-star convention: a vanishing
// star makes the factor exactly 1, an infinite star against a positive
// partner makes it 0.
double one_minus_star_product(double fs, double gs) {
  if (fs == 0.0 || gs == 0.0) return 1.0;
  if (std::isinf(fs) || std::isinf(gs)) return 0.0;
  return std::max(0.0, 1.0 - fs * gs);
}

// term of the maxmin limit product, rewritten through the maxmin stars:
// max{0, 1 - (1-phi*)/phi* * psi_*/(1-psi_*)}
double mm_product_term(double phis, double psis) {
  if (psis <= 0.0 || phis >= 1.0) return 1.0;
  if (phis <= 0.0 || psis >= 1.0) return 0.0;
  return std::max(0.0, 1.0 - (1.0 - phis) / phis * psis / (1.0 - psis));
}

std::string tag(const std::string& op, const BivariateCopula& c,
                const std::string& a, const std::string& b) {
  return op + "(" + c.label() + "," + a + "," + b + ")";
}

}  // namespace

BivariateCopula rmm(const BivariateCopula& c_dot, const Generator& f,
                    const Generator& g) {
  require_valid(f);
  require_valid(g);
  return {[c_dot, f, g](double u, double v) {
            if (u <= 0.0 || v <= 0.0) return 0.0;
            const double fh = f.f_hat(u), gh = g.f_hat(v);
            const double factor =
                one_minus_star_product(f.f_star(u), g.f_star(v));
            if (factor == 0.0) return 0.0;
            return u * v * c_dot(fh, gh) / (fh * gh) * factor;
          },
          tag("rmm", c_dot, f.label(), g.label())};
}

BivariateCopula mm(const BivariateCopula& c, const MMGenerator& phi,
                   const MMGenerator& psi) {
  require_kinds(phi, psi);
  require_valid(phi.rule());
  require_valid(psi.rule());
  return {[c, phi, psi](double u, double v) {
            const double pu = phi.map(u), pv = psi.map(v);
            return u + (c(pu, pv) - pu) *
                           std::max(0.0, phi.star(u) - psi.star(v));
          },
          tag("mm", c, phi.label(), psi.label())};
}

BivariateCopula rmm_iter(const BivariateCopula& c_dot, const Generator& f,
                         const Generator& g, int n) {
  if (n < 0) throw std::invalid_argument("rmm_iter: n must be >= 0");
  if (n == 0) return c_dot;
  require_valid(f);
  require_valid(g);
  return {[c_dot, f, g, n](double u, double v) {
            if (u <= 0.0 || v <= 0.0) return 0.0;
            double fu = u, gv = v, prod = 1.0;
            for (int k = 0; k < n; ++k) {
              prod *= one_minus_star_product(f.f_star(fu), g.f_star(gv));
              if (prod == 0.0) return 0.0;
              fu = f.f_hat(fu);
              gv = g.f_hat(gv);
            }
            return u * v * c_dot(fu, gv) / (fu * gv) * prod;
          },
          tag("rmm_iter[" + std::to_string(n) + "]", c_dot, f.label(),
              g.label())};
}

BivariateCopula mm_iter(const BivariateCopula& c, const MMGenerator& phi,
                        const MMGenerator& psi, int n) {
  if (n < 0) throw std::invalid_argument("mm_iter: n must be >= 0");
  if (n == 0) return c;
  require_kinds(phi, psi);
  require_valid(phi.rule());
  require_valid(psi.rule());
  return {[c, phi, psi, n](double u, double v) {
            if (u <= 0.0) return 0.0;
            if (v >= 1.0) return u;  // psi^(n)(1) = 1 leaves a removable 0/0
            double pu = u, pv = v, prod = 1.0;
            for (int k = 0; k < n; ++k) {
              prod *= mm_product_term(phi.star(pu), psi.star(pv));
              pu = phi.map(pu);
              pv = psi.map(pv);
            }
            if (prod == 0.0) return u;
            const double num = pu - c(pu, pv);
            const double den = pu * (1.0 - pv);
            return u - u * (1.0 - v) * num / den * prod;
          },
          tag("mm_iter[" + std::to_string(n) + "]", c, phi.label(),
              psi.label())};
}

BivariateCopula rmm_limit(const BivariateCopula& c_dot, const Generator& f,
                          const Generator& g, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("rmm_limit: tol must be > 0");
  require_valid(f);
  require_valid(g);
  const double alpha = f.alpha(), beta = g.alpha();
  return {[c_dot, f, g, alpha, beta, tol](double u, double v) {
            if (u <= 0.0 || v <= 0.0) return 0.0;
            if (u >= alpha && v >= beta) return c_dot(u, v);
            if (u >= alpha) return v / beta * c_dot(u, beta);
            if (v >= beta) return u / alpha * c_dot(alpha, v);
            // interior corner below both thresholds
            if (f.f(u) * g.f(v) >= u * v) return 0.0;
            const double prefactor = c_dot(alpha, beta) / (alpha * beta);
            if (prefactor == 0.0) return 0.0;
            double fu = u, gv = v;
            const auto result = numerics::truncated_product(
                [&](std::size_t) {
                  const double term =
                      one_minus_star_product(f.f_star(fu), g.f_star(gv));
                  fu = f.f_hat(fu);
                  gv = g.f_hat(gv);
                  return term;
                },
                tol);
            if (!result.converged)
              throw ProductTruncationError(
                  result.terms_used,
                  "rmm_limit: product did not settle after " +
                      std::to_string(result.terms_used) + " terms");
            return u * v * prefactor * result.value;
          },
          tag("rmm_limit", c_dot, f.label(), g.label())};
}

BivariateCopula mm_limit(const BivariateCopula& c, const MMGenerator& phi,
                         const MMGenerator& psi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("mm_limit: tol must be > 0");
  require_kinds(phi, psi);
  require_valid(phi.rule());
  require_valid(psi.rule());
  // alpha: phi = id on [alpha,1]; 1-beta: psi = id on [0,1-beta].
  const double alpha = phi.rule().alpha(), beta = psi.rule().alpha();
  return {[c, phi, psi, alpha, beta, tol](double u, double v) {
            if (u <= 0.0) return 0.0;
            if (u >= alpha && v <= 1.0 - beta) return c(u, v);
            if (u <= alpha && v <= 1.0 - beta)
              return u / alpha * c(alpha, v);
            if (u >= alpha)
              return u - (1.0 - v) / beta * (u - c(u, 1.0 - beta));
            // u < alpha, v > 1-beta
            if (phi.star(u) <= psi.star(v)) return u;
            double pu = u, pv = v;
            const auto result = numerics::truncated_product(
                [&](std::size_t) {
                  const double term =
                      mm_product_term(phi.star(pu), psi.star(pv));
                  pu = phi.map(pu);
                  pv = psi.map(pv);
                  return term;
                },
                tol);
            if (!result.converged)
              throw ProductTruncationError(
                  result.terms_used,
                  "mm_limit: product did not settle after " +
                      std::to_string(result.terms_used) + " terms");
            return u - u * (1.0 - v) / (alpha * beta) *
                           (alpha - c(alpha, 1.0 - beta)) * result.value;
          },
          tag("mm_limit", c, phi.label(), psi.label())};
}

}  // namespace rmmcop
