#include "rmmcop/measures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "rmmcop/generator.hpp"
#include "rmmcop/numerics.hpp"
#include "rmmcop/transforms.hpp"

namespace rmmcop {

namespace {

constexpr double kPartialStep = 1e-5;

double partial_u(const BivariateCopula& c, double u, double v) {
  return numerics::central_diff([&](double x) { return c(x, v); }, u,
                                kPartialStep);
}

double partial_v(const BivariateCopula& c, double u, double v) {
  return numerics::central_diff([&](double x) { return c(u, x); }, v,
                                kPartialStep);
}

}  // namespace

MeasureReport spearman_rho(const BivariateCopula& c, double tol) {
  const auto q = numerics::integrate2d(
      [&](double u, double v) { return c(u, v); }, tol);
  return {MeasureKind::rho, 12.0 * q.value - 3.0, 12.0 * q.error_estimate,
          MeasureMethod::quadrature};
}

MeasureReport kendall_tau(const BivariateCopula& c, double tol) {
  const auto q = numerics::integrate2d(
      [&](double u, double v) {
        const double cu = std::clamp(partial_u(c, u, v), 0.0, 1.0);
        const double cv = std::clamp(partial_v(c, u, v), 0.0, 1.0);
        return cu * cv;
      },
      tol / 4.0);
  return {MeasureKind::tau, 1.0 - 4.0 * q.value, 4.0 * q.error_estimate,
          MeasureMethod::finite_difference};
}

std::pair<MeasureReport, MeasureReport> tail_coefficients(
    const BivariateCopula& c, const std::vector<double>& eps_seq) {
  if (eps_seq.empty())
    throw std::invalid_argument("tail_coefficients: empty sequence");
  std::vector<double> lower, upper;
  for (double eps : eps_seq) {
    if (!(eps > 0.0 && eps < 1.0))
      throw std::invalid_argument("tail_coefficients: eps must be in (0,1)");
    lower.push_back(c.diagonal(eps) / eps);
    const double t = 1.0 - eps;
    upper.push_back((1.0 - 2.0 * t + c.diagonal(t)) / (1.0 - t));
  }
  auto spread = [](const std::vector<double>& v) {
    return v.size() > 1 ? std::abs(v.back() - v[v.size() - 2]) : 0.0;
  };
  MeasureReport lo{MeasureKind::lambda_lower, lower.back(), spread(lower),
                   MeasureMethod::limit_extrapolation};
  MeasureReport hi{MeasureKind::lambda_upper, upper.back(), spread(upper),
                   MeasureMethod::limit_extrapolation};
  return {lo, hi};
}

QuadrantClass quadrant_class(const BivariateCopula& c, int grid_n,
                             double tol) {
  if (grid_n < 3) throw std::invalid_argument("quadrant_class: grid_n >= 3");
  double min_diff = 0.0, max_diff = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double u = double(i) / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double v = double(j) / (grid_n - 1);
      const double d = c(u, v) - u * v;
      min_diff = std::min(min_diff, d);
      max_diff = std::max(max_diff, d);
    }
  }
  if (min_diff >= -tol) return QuadrantClass::PQD;
  if (max_diff <= tol) return QuadrantClass::NQD;
  return QuadrantClass::NEITHER;
}

std::string to_string(QuadrantClass q) {
  switch (q) {
    case QuadrantClass::PQD: return "PQD";
    case QuadrantClass::NQD: return "NQD";
    default: return "NEITHER";
  }
}

std::vector<std::pair<std::string, BivariateCopula>> reference_table_bases() {
  return {{"pi", independence()},
          {"m", comonotone()},
          {"w", countermonotone()},
          {"clayton", flip_second(clayton(-0.7))}};
}

std::vector<TableCell> table_run(const TableConfig& config) {
  const double tol =
      config.tol > 0.0 ? config.tol
                       : (config.kind == MeasureKind::rho ? 2e-4 : 1e-3);

  struct Job {
    std::string base;
    BivariateCopula c_dot;
    double a, b;
    int n;
  };
  std::vector<Job> jobs;
  for (const auto& [label, base] : config.bases) {
    const BivariateCopula c_dot = flip_second(base);
    for (double a : config.a_values)
      for (double b : config.b_values)
        for (int n : config.n_values)
          jobs.push_back({label, c_dot, a, b, n});
  }

  std::vector<TableCell> cells(jobs.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= jobs.size()) break;
      const Job& job = jobs[i];
      TableCell& cell = cells[i];
      cell = {job.base, job.a, job.b, job.n, config.kind, 0.0, 0.0};
      try {
        const auto iterate =
            rmm_iter(job.c_dot, Generator::power(job.a),
                     Generator::power(job.b), job.n);
        const MeasureReport report = config.kind == MeasureKind::rho
                                         ? spearman_rho(iterate, tol)
                                         : kendall_tau(iterate, tol);
        cell.value = report.value;
        cell.error = report.error_estimate;
      } catch (const std::exception&) {
        cell.value = std::numeric_limits<double>::quiet_NaN();
        cell.error = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };

  int threads = config.threads > 0
                    ? config.threads
                    : int(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, int(jobs.size()) > 0 ? int(jobs.size()) : 1);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return cells;
}

void write_table_csv(std::ostream& out, const std::vector<TableCell>& cells) {
  out << "base,a,b,n,kind,value,error\n";
  char buf[160];
  for (const auto& cell : cells) {
    std::snprintf(buf, sizeof(buf), "%s,%g,%g,%d,%s,%.4f,%.4f",
                  cell.base.c_str(), cell.a, cell.b, cell.n,
                  cell.kind == MeasureKind::rho ? "rho" : "tau", cell.value,
                  cell.error);
    out << buf << "\n";
  }
}

namespace {

// discordant pairs by merge counting inversions of y in x-sorted order
std::size_t count_inversions(std::vector<double>& y, std::vector<double>& tmp,
                             std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::size_t inv = count_inversions(y, tmp, lo, mid) +
                    count_inversions(y, tmp, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (y[j] < y[i]) {
      inv += mid - i;
      tmp[k++] = y[j++];
    } else {
      tmp[k++] = y[i++];
    }
  }
  while (i < mid) tmp[k++] = y[i++];
  while (j < hi) tmp[k++] = y[j++];
  std::copy(tmp.begin() + lo, tmp.begin() + hi, y.begin() + lo);
  return inv;
}

std::vector<double> average_ranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = 0.5 * (double(i) + double(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
    i = j + 1;
  }
  return rank;
}

double tie_pairs(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double total = 0.0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    const double t = double(j - i + 1);
    total += 0.5 * t * (t - 1.0);
    i = j + 1;
  }
  return total;
}

}  // namespace

std::pair<MeasureReport, MeasureReport> estimate_measures(
    const SampleBatch& batch) {
  const std::size_t n = batch.points.size();
  if (n < 100)
    throw std::invalid_argument("estimate_measures: need at least 100 points");

  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = batch.points[i][0];
    ys[i] = batch.points[i][1];
  }

  const double n0 = 0.5 * double(n) * double(n - 1);
  const double n1 = tie_pairs(xs);
  const double n2 = tie_pairs(ys);
  if (n1 >= n0 || n2 >= n0)
    throw std::runtime_error("estimate_measures: degenerate batch, all tied");

  // Spearman: Pearson correlation of average ranks
  const std::vector<double> rx = average_ranks(xs), ry = average_ranks(ys);
  const double mean = 0.5 * (double(n) + 1.0);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean, dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  MeasureReport rho{MeasureKind::rho, sxy / std::sqrt(sxx * syy),
                    1.0 / std::sqrt(double(n)), MeasureMethod::monte_carlo};

  // Kendall: sort by (x, y ascending), count y-inversions = discordant pairs
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return xs[a] != xs[b] ? xs[a] < xs[b] : ys[a] < ys[b];
  });
  std::vector<double> ysorted(n), tmp(n), both(n);
  for (std::size_t i = 0; i < n; ++i) ysorted[i] = ys[order[i]];
  const double discordant =
      double(count_inversions(ysorted, tmp, 0, n));
  std::vector<std::array<double, 2>> xy(n);
  for (std::size_t i = 0; i < n; ++i) xy[i] = {xs[i], ys[i]};
  std::sort(xy.begin(), xy.end());
  double n3 = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xy[j + 1] == xy[i]) ++j;
    const double t = double(j - i + 1);
    n3 += 0.5 * t * (t - 1.0);
    i = j + 1;
  }
  const double concord_minus_discord = n0 - n1 - n2 + n3 - 2.0 * discordant;
  const double denom = std::sqrt((n0 - n1) * (n0 - n2));
  MeasureReport tau{MeasureKind::tau, concord_minus_discord / denom,
                    2.0 / (3.0 * std::sqrt(double(n))),
                    MeasureMethod::monte_carlo};
  return {rho, tau};
}

}  // namespace rmmcop
