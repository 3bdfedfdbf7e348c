#include "rmmcop/ncopula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rmmcop {

namespace {

void check_dim(int dim) {
  if (dim < 2) throw std::invalid_argument("n-copula dimension must be >= 2");
}

std::string join_labels(const std::vector<Generator>& gens) {
  std::string out;
  for (const auto& g : gens) {
    if (!out.empty()) out += ",";
    out += g.label();
  }
  return out;
}

}  // namespace

NCopula::NCopula(int dim, Eval eval, std::string label)
    : dim_(dim),
      eval_(std::make_shared<const Eval>(std::move(eval))),
      label_(std::move(label)) {
  check_dim(dim);
}

double NCopula::raw(std::span<const double> u) const {
  if (int(u.size()) != dim_)
    throw std::invalid_argument("n-copula: argument dimension mismatch");
  for (double x : u)
    if (!(x >= 0.0 && x <= 1.0))
      throw std::domain_error("n-copula arguments must lie in [0,1]");
  return (*eval_)(u);
}

double NCopula::operator()(std::span<const double> u) const {
  const double value = raw(u);
  double lo = 1.0 - dim_, hi = 1.0;
  for (double x : u) {
    lo += x;
    hi = std::min(hi, x);
  }
  return std::clamp(value, std::max(0.0, lo), hi);
}

NCopula independence_n(int dim) {
  check_dim(dim);
  return {dim,
          [](std::span<const double> u) {
            double p = 1.0;
            for (double x : u) p *= x;
            return p;
          },
          "pi" + std::to_string(dim)};
}

NCopula comonotone_n(int dim) {
  check_dim(dim);
  return {dim,
          [](std::span<const double> u) {
            return *std::min_element(u.begin(), u.end());
          },
          "m" + std::to_string(dim)};
}

NCopula from_bivariate(const BivariateCopula& c) {
  return {2, [c](std::span<const double> u) { return c(u[0], u[1]); },
          c.label()};
}

NCopula flip_vars(const NCopula& c, const std::vector<int>& idx) {
  if (idx.empty()) throw std::invalid_argument("flip_vars: idx must be nonempty");
  for (int i : idx)
    if (i < 0 || i >= c.dim())
      throw std::invalid_argument("flip_vars: index out of range");
  std::string label = "flip{";
  for (std::size_t k = 0; k < idx.size(); ++k)
    label += (k ? "," : "") + std::to_string(idx[k]);
  label += "}(" + c.label() + ")";

  return {c.dim(),
          [c, idx](std::span<const double> u) {
            std::vector<double> args(u.begin(), u.end());
            double total = 0.0;
            const std::size_t combos = std::size_t(1) << idx.size();
            for (std::size_t mask = 0; mask < combos; ++mask) {
              int sign = 1;
              for (std::size_t k = 0; k < idx.size(); ++k) {
                if (mask & (std::size_t(1) << k)) {
                  args[idx[k]] = 1.0 - u[idx[k]];
                  sign = -sign;
                } else {
                  args[idx[k]] = 1.0;
                }
              }
              total += sign * c(args);
            }
            return total;
          },
          label};
}

NCopula mm_n(const NCopula& base, const std::vector<MMGenerator>& gens, int p) {
  const int n = base.dim();
  if (int(gens.size()) != n)
    throw std::invalid_argument("mm_n: need one generator per coordinate");
  if (p < 1 || p > n - 1)
    throw std::invalid_argument("mm_n: p must lie in [1, n-1]");
  for (int i = 0; i < n; ++i) {
    const MMKind want = i < p ? MMKind::F1 : MMKind::F2;
    if (gens[i].kind() != want)
      throw std::invalid_argument(
          "mm_n: coordinate " + std::to_string(i) +
          (want == MMKind::F1 ? " must carry an F1 generator"
                              : " must carry an F2 generator"));
  }

  return {n,
          [base, gens, p, n](std::span<const double> u) {
            std::vector<double> star(n), mapped(n);
            for (int i = 0; i < n; ++i) {
              star[i] = gens[i].star(u[i]);
              mapped[i] = gens[i].map(u[i]);
            }
            std::vector<double> args(n);
            double total = 0.0;
            const int s = n - p;  // min-linked coordinates p..n-1
            for (std::size_t mask = 0; mask < (std::size_t(1) << s); ++mask) {
              double mn = std::numeric_limits<double>::infinity();
              double mx = 0.0;  // max over an empty set counts as 0
              for (int i = 0; i < p; ++i) {
                args[i] = mapped[i];
                mn = std::min(mn, star[i]);
              }
              for (int k = 0; k < s; ++k) {
                const int i = p + k;
                if (mask & (std::size_t(1) << k)) {
                  args[i] = 1.0;
                  mn = std::min(mn, star[i]);
                } else {
                  args[i] = mapped[i];
                  mx = std::max(mx, star[i]);
                }
              }
              const double factor = std::max(0.0, mn - mx);
              if (factor > 0.0) total += base(args) * factor;
            }
            return total;
          },
          "mm_n[p=" + std::to_string(p) + "](" + base.label() + ")"};
}

NCopula rmm_n(const NCopula& base_reflected, const std::vector<Generator>& gens,
              int p) {
  const int n = base_reflected.dim();
  if (int(gens.size()) != n)
    throw std::invalid_argument("rmm_n: need one generator per coordinate");
  if (p < 1 || p > n - 1)
    throw std::invalid_argument("rmm_n: p must lie in [1, n-1]");
  for (const auto& g : gens) {
    const auto v = g.validate(201, 1e-9);
    if (!v.pass)
      throw std::invalid_argument("rmm_n: generator '" + g.label() +
                                  "' violates the class conditions");
  }

  return {n,
          [base_reflected, gens, p, n](std::span<const double> u) {
            for (double x : u)
              if (x <= 0.0) return 0.0;
            std::vector<double> fv(n), fh(n);
            double hat_product = 1.0;
            for (int i = 0; i < n; ++i) {
              fv[i] = gens[i].f(u[i]);
              fh[i] = gens[i].f_hat(u[i]);
              hat_product *= fh[i];
            }
            double inner = std::numeric_limits<double>::infinity();
            for (int j = 0; j < p; ++j)
              for (int k = p; k < n; ++k) {
                const double pair = u[j] * u[k] - fv[j] * fv[k];
                inner = std::min(inner, pair * (hat_product / (fh[j] * fh[k])));
              }
            if (inner <= 0.0) return 0.0;
            return base_reflected(fh) / hat_product * inner;
          },
          "rmm_n[p=" + std::to_string(p) + "](" + base_reflected.label() + ";" +
              join_labels(gens) + ")"};
}

NCopula rmm_3(const NCopula& base_reflected, const Generator& f1,
              const Generator& f2, const Generator& f3) {
  if (base_reflected.dim() != 3)
    throw std::invalid_argument("rmm_3: base must be trivariate");
  return {3,
          [base_reflected, f1, f2, f3](std::span<const double> u) {
            if (u[0] <= 0.0 || u[1] <= 0.0 || u[2] <= 0.0) return 0.0;
            const double a1 = f1.f(u[0]), a2 = f2.f(u[1]), a3 = f3.f(u[2]);
            const double h1 = f1.f_hat(u[0]), h2 = f2.f_hat(u[1]),
                         h3 = f3.f_hat(u[2]);
            const double inner = std::min((u[0] * u[1] - a1 * a2) * h3,
                                          (u[0] * u[2] - a1 * a3) * h2);
            if (inner <= 0.0) return 0.0;
            const std::array<double, 3> hats{h1, h2, h3};
            return base_reflected(hats) / (h1 * h2 * h3) *
                   std::max(0.0, inner);
          },
          "rmm_3(" + base_reflected.label() + ";" + f1.label() + "," +
              f2.label() + "," + f3.label() + ")"};
}

double n_box_volume(const NCopula& c, std::span<const double> lo,
                    std::span<const double> hi) {
  const int n = c.dim();
  if (int(lo.size()) != n || int(hi.size()) != n)
    throw std::invalid_argument("n_box_volume: dimension mismatch");
  for (int i = 0; i < n; ++i)
    if (!(lo[i] <= hi[i]))
      throw std::invalid_argument("n_box_volume: need lo <= hi");
  std::vector<double> corner(n);
  double total = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    int sign = 1;
    for (int i = 0; i < n; ++i) {
      if (mask & (std::size_t(1) << i)) {
        corner[i] = lo[i];
        sign = -sign;
      } else {
        corner[i] = hi[i];
      }
    }
    total += sign * c(corner);
  }
  return total;
}

}  // namespace rmmcop
