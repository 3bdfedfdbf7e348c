#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rmmcop/bivariate.hpp"
#include "rmmcop/sampling.hpp"

namespace rmmcop {

enum class MeasureKind { rho, tau, lambda_lower, lambda_upper };
enum class MeasureMethod {
  quadrature,
  finite_difference,
  monte_carlo,
  limit_extrapolation
};

struct MeasureReport {
  MeasureKind kind;
  double value = 0.0;
  double error_estimate = 0.0;
  MeasureMethod method = MeasureMethod::quadrature;
};

/// Spearman's rho, 12 * iint C - 3, by adaptive quadrature.
MeasureReport spearman_rho(const BivariateCopula& c, double tol = 1e-4);

/// Kendall's tau through the derivative form 1 - 4 * iint C'_u C'_v, the
/// partials from difference quotients clamped into [0,1].  The form stays
/// valid almost everywhere for copulas with singular parts.
MeasureReport kendall_tau(const BivariateCopula& c, double tol = 1e-3);

/// Lower and upper tail coefficients from the diagonal, evaluated at a
/// sequence of distances eps from the corner and read off at the last one;
/// the spread of the final two values is the error estimate.
std::pair<MeasureReport, MeasureReport> tail_coefficients(
    const BivariateCopula& c,
    const std::vector<double>& eps_seq = {1e-2, 1e-3, 1e-4, 1e-5});

enum class QuadrantClass { PQD, NQD, NEITHER };

/// Grid comparison against the product copula; a copula within tol of Pi on
/// the whole grid reports PQD (Pi is both).
QuadrantClass quadrant_class(const BivariateCopula& c, int grid_n, double tol);
std::string to_string(QuadrantClass q);

struct TableCell {
  std::string base;
  double a = 0.0, b = 0.0;
  int n = 0;
  MeasureKind kind = MeasureKind::rho;
  double value = 0.0;
  double error = 0.0;
};

/// One dependence-measure table: for every base C, parameter pair (a,b) and
/// iteration count n, the measure of the n-fold reflected transform of
/// flip_second(C) under power(a), power(b) generators.  n = 0 is the measure
/// of the reflected base itself.  Per-cell failures are recorded as NaN and
/// the run continues.
struct TableConfig {
  std::vector<std::pair<std::string, BivariateCopula>> bases;
  std::vector<double> a_values{0.1, 0.5, 0.9};
  std::vector<double> b_values{0.1, 0.5, 0.9};
  std::vector<int> n_values{0, 1, 2, 3, 4};
  MeasureKind kind = MeasureKind::rho;
  double tol = 0.0;  // 0 picks a default per measure kind
  int threads = 0;   // 0 = hardware concurrency
};

std::vector<TableCell> table_run(const TableConfig& config);

/// Default bases reproducing the reference tables: pi, m, w and the
/// reflection of clayton(-0.7) (so the n = 0 column tracks the negatively
/// dependent Clayton itself).
std::vector<std::pair<std::string, BivariateCopula>> reference_table_bases();

/// CSV rows `base,a,b,n,kind,value,error` with 4-decimal numeric fields.
void write_table_csv(std::ostream& out, const std::vector<TableCell>& cells);

/// Sample versions of rho (rank correlation) and tau (concordant minus
/// discordant pairs, counted in O(n log n)).
std::pair<MeasureReport, MeasureReport> estimate_measures(
    const SampleBatch& batch);

}  // namespace rmmcop
