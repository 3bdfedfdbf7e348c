#include "rmmcop/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace rmmcop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

double interp(const std::vector<std::array<double, 2>>& knots, double u) {
  if (u <= knots.front()[0]) return knots.front()[1];
  if (u >= knots.back()[0]) return knots.back()[1];
  auto it = std::upper_bound(
      knots.begin(), knots.end(), u,
      [](double value, const std::array<double, 2>& k) { return value < k[0]; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double t = (u - lo[0]) / (hi[0] - lo[0]);
  return lo[1] + t * (hi[1] - lo[1]);
}

}  // namespace

Generator::Generator(Family family, double p0, double p1, std::string label)
    : family_(family), p0_(p0), p1_(p1), label_(std::move(label)) {}

Generator Generator::power(double a) {
  if (!(a > 0.0 && a < 1.0))
    throw std::domain_error("power generator: a must lie in (0,1)");
  Generator g(Family::kPower, a, 0.0, "power(" + fmt_num(a) + ")");
  g.alpha_ = 1.0;
  return g;
}

Generator Generator::scaled_complement(double c) {
  if (!(c > 0.0 && c <= 1.0))
    throw std::domain_error("scaled_complement generator: c must lie in (0,1]");
  Generator g(Family::kScaledComplement, c, 0.0,
              "scaled_complement(" + fmt_num(c) + ")");
  g.alpha_ = 1.0;
  return g;
}

Generator Generator::quadratic(double c) {
  if (!(c > 0.0 && c <= 1.0))
    throw std::domain_error("quadratic generator: c must lie in (0,1]");
  Generator g(Family::kQuadratic, c, 0.0, "quadratic(" + fmt_num(c) + ")");
  g.alpha_ = 1.0;
  return g;
}

Generator Generator::tent() {
  Generator g(Family::kTent, 0.0, 0.0, "tent");
  g.alpha_ = 1.0;
  return g;
}

Generator Generator::trunc_linear(double c, double s) {
  if (!(c > 0.0 && c <= 1.0) || !(s >= 0.0 && s <= 1.0))
    throw std::domain_error(
        "trunc_linear generator: need c in (0,1] and s in [0,1]");
  Generator g(Family::kTruncLinear, c, s,
              "trunc_linear(" + fmt_num(c) + "," + fmt_num(s) + ")");
  g.alpha_ = s;
  return g;
}

Generator Generator::zero() {
  Generator g(Family::kZero, 0.0, 0.0, "zero");
  g.alpha_ = 0.0;
  return g;
}

Generator Generator::tabulated(std::vector<std::array<double, 2>> knots) {
  if (knots.size() < 2)
    throw std::invalid_argument("tabulated generator: need at least 2 knots");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i][0] > knots[i - 1][0]))
      throw std::invalid_argument("tabulated generator: x must be ascending");
  if (knots.front()[0] != 0.0 || knots.back()[0] != 1.0)
    throw std::invalid_argument("tabulated generator: x must span [0,1]");

  Generator g(Family::kTabulated, 0.0, 0.0, "tabulated");
  g.knots_ = std::move(knots);

  // monotone-compatibility at knots and midpoints
  std::vector<double> probes;
  for (std::size_t i = 0; i < g.knots_.size(); ++i) {
    probes.push_back(g.knots_[i][0]);
    if (i + 1 < g.knots_.size())
      probes.push_back(0.5 * (g.knots_[i][0] + g.knots_[i + 1][0]));
  }
  const auto raw_hat = [&g](double u) { return u + g.f(u); };
  for (std::size_t i = 1; i < probes.size(); ++i) {
    if (raw_hat(probes[i]) < raw_hat(probes[i - 1]) - 1e-12)
      throw std::invalid_argument("tabulated generator: u + f(u) decreases");
    if (probes[i - 1] > 0.0 &&
        g.f_star(probes[i]) > g.f_star(probes[i - 1]) + 1e-12)
      throw std::invalid_argument("tabulated generator: f(u)/u increases");
  }
  g.alpha_ = compute_alpha(g, 1024);
  return g;
}

double Generator::f(double u) const {
  switch (family_) {
    case Family::kPower: return std::pow(u, 1.0 - p0_) - u;
    case Family::kScaledComplement: return p0_ * (1.0 - u);
    case Family::kQuadratic: return p0_ * u * (1.0 - u);
    case Family::kTent: return std::min(u, 1.0 - u);
    case Family::kTruncLinear: return p0_ * std::max(0.0, p1_ - u);
    case Family::kZero: return 0.0;
    case Family::kTabulated: return interp(knots_, u);
  }
  return 0.0;
}

double Generator::f_star(double u) const {
  switch (family_) {
    case Family::kPower:
      return u > 0.0 ? std::pow(u, -p0_) - 1.0 : kInf;
    case Family::kScaledComplement:
      return u > 0.0 ? p0_ * (1.0 - u) / u : kInf;
    case Family::kQuadratic:
      return p0_ * (1.0 - u);
    case Family::kTent:
      return u > 0.0 ? std::min(1.0, (1.0 - u) / u) : 1.0;
    case Family::kTruncLinear:
      if (u > 0.0) return p0_ * std::max(0.0, p1_ - u) / u;
      return p1_ > 0.0 ? kInf : 0.0;
    case Family::kZero:
      return 0.0;
    case Family::kTabulated:
      if (u > 0.0) return interp(knots_, u) / u;
      if (knots_.front()[1] > 0.0) return kInf;
      return knots_[1][1] / knots_[1][0];  // right slope at the origin
  }
  return 0.0;
}

double Generator::f_hat(double u) const {
  // in exact arithmetic u <= u + f(u) <= 1; trim the roundoff excursions
  return std::clamp(u + f(u), u, 1.0);
}

double Generator::f_hat_iter(double u, int n) const {
  if (n < 0) throw std::invalid_argument("f_hat_iter: n must be >= 0");
  double x = u;
  for (int k = 0; k < n; ++k) x = f_hat(x);
  return x;
}

double Generator::f_hat_limit(double u) const {
  if (u == 0.0) return 0.0;
  return u < alpha_ ? alpha_ : u;
}

bool Generator::star_infinite_at_zero() const {
  return std::isinf(f_star(0.0));
}

Generator::Validation Generator::validate(int grid_n, double tol) const {
  if (grid_n < 3) throw std::invalid_argument("validate: grid_n >= 3");
  Validation v;
  v.f_at_zero = f(0.0);
  v.f_at_zero_nonzero = std::abs(v.f_at_zero) > tol;
  v.worst_boundary = std::abs(f(1.0));
  v.worst_boundary = std::max(v.worst_boundary, std::abs(f_star(1.0)));

  double prev_hat = f(0.0);
  double prev_star = kInf;
  for (int i = 1; i < grid_n; ++i) {
    const double u = double(i) / (grid_n - 1);
    const double hat = u + f(u);  // unclamped, so G2 breaks stay visible
    v.worst_hat_decrease = std::max(v.worst_hat_decrease, prev_hat - hat);
    prev_hat = hat;
    const double star = f_star(u);
    if (!std::isinf(prev_star))
      v.worst_star_increase = std::max(v.worst_star_increase, star - prev_star);
    prev_star = star;
  }
  v.pass = v.worst_boundary <= tol && v.worst_hat_decrease <= tol &&
           v.worst_star_increase <= tol;
  return v;
}

double compute_alpha(const Generator& g, int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("compute_alpha: grid_n >= 2");
  constexpr double kZeroEps = 1e-14;
  int last_positive = -1;
  for (int i = grid_n - 1; i >= 0; --i) {
    if (g.f(double(i) / (grid_n - 1)) > kZeroEps) {
      last_positive = i;
      break;
    }
  }
  if (last_positive < 0) return 0.0;
  if (last_positive == grid_n - 1) return 1.0;
  double lo = double(last_positive) / (grid_n - 1);
  double hi = double(last_positive + 1) / (grid_n - 1);
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (g.f(mid) > kZeroEps)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

MMGenerator::MMGenerator(MMKind kind, Generator rule)
    : kind_(kind), rule_(std::move(rule)) {}

MMGenerator MMGenerator::f1(Generator rule) {
  return MMGenerator(MMKind::F1, std::move(rule));
}

MMGenerator MMGenerator::f2(Generator rule) {
  return MMGenerator(MMKind::F2, std::move(rule));
}

MMGenerator MMGenerator::identity(MMKind kind) {
  return MMGenerator(kind, Generator::zero());
}

double MMGenerator::map(double u) const {
  if (kind_ == MMKind::F1) return rule_.f_hat(u);
  // cancellation near the corners can push the value a hair outside [0,u]
  return std::clamp(u - rule_.f(1.0 - u), 0.0, u);
}

double MMGenerator::star(double u) const {
  if (kind_ == MMKind::F1) {
    if (u > 0.0) return u / rule_.f_hat(u);
    const double fs0 = rule_.f_star(0.0);
    return std::isinf(fs0) ? 0.0 : 1.0 / (1.0 + fs0);
  }
  if (u >= 1.0) return 1.0;
  const double w = 1.0 - u;
  return rule_.f(w) / rule_.f_hat(w);
}

std::string MMGenerator::label() const {
  return (kind_ == MMKind::F1 ? "f1(" : "f2(") + rule_.label() + ")";
}

namespace {

void require_valid_rule(const Generator& g, const char* who) {
  const auto v = g.validate(201, 1e-9);
  if (!v.pass)
    throw std::invalid_argument(std::string(who) + ": rule '" + g.label() +
                                "' violates the generator class conditions");
}

}  // namespace

Generator from_mm(const MMGenerator& m) {
  require_valid_rule(m.rule(), "from_mm");
  return m.rule();
}

MMGenerator to_mm(const Generator& g, MMKind kind) {
  require_valid_rule(g, "to_mm");
  return kind == MMKind::F1 ? MMGenerator::f1(g) : MMGenerator::f2(g);
}

}  // namespace rmmcop
