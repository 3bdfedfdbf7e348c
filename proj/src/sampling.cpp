#include "rmmcop/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>

#include "rmmcop/numerics.hpp"

namespace rmmcop {

namespace {

constexpr double kStep = 1e-4;          // difference-quotient step
constexpr double kInvertTol = 1e-10;    // bisection tolerance
constexpr double kAtomDensity = 100.0;  // cdf slope that flags an atom
constexpr int kMonotoneScan = 17;
constexpr double kMonotoneTol = 1e-6;
constexpr int kRetryCap = 100;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// step shrunk near the edges so the stencil stays symmetric; a symmetric
// stencil keeps the smeared image of an atom centred on the atom itself
double sym_step(double x) {
  return std::max(1e-12, std::min({kStep, x, 1.0 - x}));
}

// Inverts a conditional cdf, collapsing smeared atoms.  The difference
// quotient widens a jump of the true cdf into a climb a few steps wide; a
// point landing on such a climb is snapped to a single abscissa: the left
// edge of the climb when a zero region of the copula borders it from the
// left, otherwise the median of the climb, which a symmetric stencil centres
// on the underlying jump.
double invert_conditional(const std::function<double(double)>& cdf,
                          const std::function<bool(double)>& is_zero,
                          double t) {
  const double v = numerics::invert_monotone(cdf, t, kInvertTol);
  const double lo = std::max(0.0, v - 4.0 * kStep);
  const double hi = std::min(1.0, v + 4.0 * kStep);
  const double t_lo = cdf(lo), t_hi = cdf(hi);
  if (t_hi - t_lo <= kAtomDensity * (hi - lo)) return v;
  const double edge =
      numerics::invert_monotone(cdf, t_lo + 1e-12, kInvertTol);
  if (edge > 1e-6 && is_zero(edge - 1e-6)) return edge;
  return numerics::invert_monotone(cdf, 0.5 * (t_lo + t_hi), kInvertTol);
}

void check_monotone(const std::function<double(double)>& cdf, double u) {
  double prev = cdf(0.0);
  for (int i = 1; i < kMonotoneScan; ++i) {
    const double cur = cdf(double(i) / (kMonotoneScan - 1));
    if (cur < prev - kMonotoneTol)
      throw std::runtime_error(
          "sample: conditional cdf decreases at u=" + std::to_string(u) +
          "; the spec does not describe a copula");
    prev = std::max(prev, cur);
  }
}

// conditional cdf v -> dC/du(u, v); exactly zero wherever C(u, v) itself
// vanishes, so samples never enter the interior of a zero region
std::function<double(double)> conditional2(const BivariateCopula& c,
                                           double u) {
  const double h = sym_step(u);
  const double up = clamp01(u + h), dn = clamp01(u - h);
  return [c, u, up, dn](double x) {
    if (c(u, x) == 0.0) return 0.0;
    return std::clamp((c(up, x) - c(dn, x)) / (up - dn), 0.0, 1.0);
  };
}

double draw2(const BivariateCopula& c, double u, double t) {
  const auto cdf = conditional2(c, u);
  check_monotone(cdf, u);
  return invert_conditional(cdf, [&](double x) { return c(u, x) == 0.0; }, t);
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97f4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return double(next() >> 11) * 0x1.0p-53; }

SampleBatch sample2(const BivariateCopula& c, std::size_t n,
                    std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample2: n must be >= 1");
  SampleBatch batch;
  batch.dim = 2;
  batch.seed = seed;
  batch.points.reserve(n);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    const double t = rng.uniform();
    batch.points.push_back({u, draw2(c, u, t), 0.0});
  }
  return batch;
}

SampleBatch sample3(const NCopula& c, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample3: n must be >= 1");
  if (c.dim() != 3)
    throw std::invalid_argument("sample3: copula must be trivariate");
  SampleBatch batch;
  batch.dim = 3;
  batch.seed = seed;
  batch.points.reserve(n);

  const BivariateCopula marginal(
      [c](double u, double v) {
        const std::array<double, 3> args{u, v, 1.0};
        return c(args);
      },
      "marginal12(" + c.label() + ")");

  // unnormalised conditional mass below z given the first two coordinates
  const auto mixed = [&c](double u1, double u2, double z) {
    const double h1 = sym_step(u1), h2 = sym_step(u2);
    const double u1p = clamp01(u1 + h1), u1m = clamp01(u1 - h1);
    const double u2p = clamp01(u2 + h2), u2m = clamp01(u2 - h2);
    const std::array<double, 3> pp{u1p, u2p, z};
    const std::array<double, 3> pm{u1p, u2m, z};
    const std::array<double, 3> mp{u1m, u2p, z};
    const std::array<double, 3> mn{u1m, u2m, z};
    return (c(pp) - c(pm) - c(mp) + c(mn)) / ((u1p - u1m) * (u2p - u2m));
  };

  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    double u1 = 0.0, u2 = 0.0, denom = 0.0;
    int attempts = 0;
    for (;;) {
      u1 = rng.uniform();
      const double t = rng.uniform();
      u2 = draw2(marginal, u1, t);
      denom = mixed(u1, u2, 1.0);
      if (denom > 1e-12) break;
      if (++attempts > kRetryCap)
        throw std::runtime_error(
            "sample3: conditional mass keeps vanishing; gave up after " +
            std::to_string(kRetryCap) + " redraws");
    }
    const auto cdf = [&](double z) {
      const std::array<double, 3> args{u1, u2, z};
      if (c(args) == 0.0) return 0.0;
      return std::clamp(mixed(u1, u2, z) / denom, 0.0, 1.0);
    };
    const auto is_zero = [&](double z) {
      const std::array<double, 3> args{u1, u2, z};
      return c(args) == 0.0;
    };
    const double t3 = rng.uniform();
    batch.points.push_back({u1, u2, invert_conditional(cdf, is_zero, t3)});
  }
  return batch;
}

void export_csv(const SampleBatch& batch, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("export_csv: cannot open '" + path.string() +
                             "'");
  out << (batch.dim == 2 ? "u1,u2" : "u1,u2,u3") << "\n";
  char buf[96];
  for (const auto& p : batch.points) {
    if (batch.dim == 2)
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g", p[0], p[1]);
    else
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g", p[0], p[1], p[2]);
    out << buf << "\n";
  }
  if (!out)
    throw std::runtime_error("export_csv: write failed for '" +
                             path.string() + "'");
}

}  // namespace rmmcop
