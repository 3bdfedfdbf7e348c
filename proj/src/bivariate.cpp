#include "rmmcop/bivariate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rmmcop {

namespace {

void check_unit(double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw std::domain_error("copula arguments must lie in [0,1]");
}

}  // namespace

BivariateCopula::BivariateCopula(Eval eval, std::string label)
    : eval_(std::make_shared<const Eval>(std::move(eval))),
      label_(std::move(label)) {}

double BivariateCopula::operator()(double u, double v) const {
  check_unit(u, v);
  const double lo = std::max(0.0, u + v - 1.0);
  const double hi = std::min(u, v);
  return std::clamp((*eval_)(u, v), lo, hi);
}

double BivariateCopula::raw(double u, double v) const {
  check_unit(u, v);
  return (*eval_)(u, v);
}

Rectangle::Rectangle(double ul, double uh, double vl, double vh)
    : u_lo(ul), u_hi(uh), v_lo(vl), v_hi(vh) {
  if (!(0.0 <= ul && ul <= uh && uh <= 1.0 && 0.0 <= vl && vl <= vh &&
        vh <= 1.0))
    throw std::invalid_argument("invalid rectangle");
}

double volume(const BivariateCopula& c, const Rectangle& r) {
  return c(r.u_hi, r.v_hi) - c(r.u_hi, r.v_lo) - c(r.u_lo, r.v_hi) +
         c(r.u_lo, r.v_lo);
}

AxiomReport validate_copula(const BivariateCopula& c, int grid_n, double tol) {
  if (grid_n < 2) throw std::invalid_argument("validate_copula: grid_n >= 2");
  AxiomReport report;
  report.tol = tol;
  std::vector<double> grid(grid_n);
  for (int i = 0; i < grid_n; ++i) grid[i] = double(i) / (grid_n - 1);

  std::vector<double> prev_row(grid_n), row(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    const double u = grid[i];
    for (int j = 0; j < grid_n; ++j) row[j] = c.raw(u, grid[j]);

    report.worst_grounding = std::max(report.worst_grounding,
                                      std::abs(row[0]));
    report.worst_grounding =
        std::max(report.worst_grounding, std::abs(c.raw(0.0, grid[i])));
    report.worst_margin =
        std::max(report.worst_margin, std::abs(row[grid_n - 1] - u));
    report.worst_margin =
        std::max(report.worst_margin, std::abs(c.raw(1.0, grid[i]) - grid[i]));

    if (i > 0) {
      for (int j = 1; j < grid_n; ++j) {
        const double vol = row[j] - row[j - 1] - prev_row[j] + prev_row[j - 1];
        if (vol < 0.0)
          report.worst_volume = std::max(report.worst_volume, -vol);
      }
    }
    std::swap(prev_row, row);
  }
  report.pass = report.worst_grounding <= tol && report.worst_margin <= tol &&
                report.worst_volume <= tol;
  return report;
}

BivariateCopula independence() {
  return {[](double u, double v) { return u * v; }, "pi"};
}

BivariateCopula comonotone() {
  return {[](double u, double v) { return std::min(u, v); }, "m"};
}

BivariateCopula countermonotone() {
  return {[](double u, double v) { return std::max(0.0, u + v - 1.0); }, "w"};
}

BivariateCopula efgm(double theta) {
  if (!(theta >= -1.0 && theta <= 1.0))
    throw std::domain_error("efgm: theta must lie in [-1,1]");
  return {[theta](double u, double v) {
            return u * v + theta * u * (1.0 - u) * v * (1.0 - v);
          },
          "efgm(" + std::to_string(theta) + ")"};
}

BivariateCopula clayton(double theta) {
  if (!(theta >= -1.0) || theta == 0.0)
    throw std::domain_error("clayton: theta must lie in [-1,inf), theta != 0");
  return {[theta](double u, double v) {
            if (u <= 0.0 || v <= 0.0) return 0.0;
            if (u >= 1.0) return v;
            if (v >= 1.0) return u;
            const double inner =
                std::pow(u, -theta) + std::pow(v, -theta) - 1.0;
            if (inner <= 0.0) return 0.0;
            return std::pow(inner, -1.0 / theta);
          },
          "clayton(" + std::to_string(theta) + ")"};
}

BivariateCopula builtin(const std::string& name,
                        const std::vector<double>& params) {
  auto want = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("builtin '" + name + "' expects " +
                                  std::to_string(n) + " parameter(s)");
  };
  if (name == "pi") { want(0); return independence(); }
  if (name == "m") { want(0); return comonotone(); }
  if (name == "w") { want(0); return countermonotone(); }
  if (name == "efgm") { want(1); return efgm(params[0]); }
  if (name == "clayton") { want(1); return clayton(params[0]); }
  throw std::invalid_argument("unknown copula family '" + name + "'");
}

BivariateCopula flip_first(const BivariateCopula& c) {
  return {[c](double u, double v) { return v - c(1.0 - u, v); },
          "flip1(" + c.label() + ")"};
}

BivariateCopula flip_second(const BivariateCopula& c) {
  return {[c](double u, double v) { return u - c(u, 1.0 - v); },
          "flip2(" + c.label() + ")"};
}

}  // namespace rmmcop
