#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "rmmcop/measures.hpp"
#include "rmmcop/sampling.hpp"
#include "rmmcop/specdoc.hpp"
#include "rmmcop/transforms.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    coords.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad coordinate");
  }
  if (coords.size() < 2) throw std::invalid_argument("need >= 2 coordinates");
  return coords;
}

int cmd_eval(const std::string& spec_path,
             const std::vector<std::string>& points) {
  const rmmcop::ParsedCopula copula = rmmcop::parse_spec(read_file(spec_path));
  for (const auto& text : points) {
    const std::vector<double> p = parse_point(text);
    const double value = copula.eval(p);
    for (double x : p) std::printf("%g,", x);
    std::printf("%.10g\n", value);
  }
  return kExitOk;
}

int cmd_validate(const std::string& spec_path, int grid, double tol) {
  const rmmcop::ParsedCopula copula = rmmcop::parse_spec(read_file(spec_path));
  if (copula.bivariate) {
    const auto report = rmmcop::validate_copula(*copula.bivariate, grid, tol);
    std::printf("grounding %.3e\nmargins %.3e\nvolumes %.3e\n%s\n",
                report.worst_grounding, report.worst_margin,
                report.worst_volume, report.pass ? "PASS" : "FAIL");
    return report.pass ? kExitOk : kExitValidation;
  }
  // n-variate: grounding/margins along the coordinate grid, then box mass
  const rmmcop::NCopula& c = *copula.ncopula;
  const int n = c.dim();
  double worst_gm = 0.0;
  std::vector<double> args(n);
  for (int axis = 0; axis < n; ++axis) {
    for (int i = 0; i < grid; ++i) {
      const double x = double(i) / (grid - 1);
      std::fill(args.begin(), args.end(), 1.0);
      args[axis] = x;
      worst_gm = std::max(worst_gm, std::abs(c.raw(args) - x));
      std::fill(args.begin(), args.end(), x);
      args[axis] = 0.0;
      worst_gm = std::max(worst_gm, std::abs(c.raw(args)));
    }
  }
  const int cells = n == 3 ? 9 : 4;
  double worst_box = 0.0;
  std::vector<int> index(n, 0);
  std::vector<double> lo(n), hi(n);
  for (;;) {
    for (int i = 0; i < n; ++i) {
      lo[i] = double(index[i]) / cells;
      hi[i] = double(index[i] + 1) / cells;
    }
    worst_box = std::min(worst_box, rmmcop::n_box_volume(c, lo, hi));
    int axis = 0;
    while (axis < n && ++index[axis] == cells) index[axis++] = 0;
    if (axis == n) break;
  }
  const bool pass = worst_gm <= tol && worst_box >= -tol;
  std::printf("grounding+margins %.3e\nmin box mass %.3e\n%s\n", worst_gm,
              worst_box, pass ? "PASS" : "FAIL");
  return pass ? kExitOk : kExitValidation;
}

const char* method_name(rmmcop::MeasureMethod m) {
  switch (m) {
    case rmmcop::MeasureMethod::quadrature: return "quadrature";
    case rmmcop::MeasureMethod::finite_difference: return "finite-difference";
    case rmmcop::MeasureMethod::monte_carlo: return "monte-carlo";
    default: return "limit-extrapolation";
  }
}

int cmd_measures(const std::string& spec_path, const std::string& kind,
                 double tol, int grid) {
  const rmmcop::ParsedCopula copula = rmmcop::parse_spec(read_file(spec_path));
  if (!copula.bivariate)
    throw std::runtime_error("measures expects a bivariate spec");
  const rmmcop::BivariateCopula& c = *copula.bivariate;
  if (kind == "rho" || kind == "tau") {
    const auto report = kind == "rho"
                            ? rmmcop::spearman_rho(c, tol > 0 ? tol : 1e-4)
                            : rmmcop::kendall_tau(c, tol > 0 ? tol : 1e-3);
    std::printf("%s,%.4f,%.2e,%s\n", kind.c_str(), report.value,
                report.error_estimate, method_name(report.method));
    return kExitOk;
  }
  if (kind == "tails") {
    const auto [lo, hi] = rmmcop::tail_coefficients(c);
    std::printf("lambda_L,%.4f,%.2e,%s\n", lo.value, lo.error_estimate,
                method_name(lo.method));
    std::printf("lambda_U,%.4f,%.2e,%s\n", hi.value, hi.error_estimate,
                method_name(hi.method));
    return kExitOk;
  }
  if (kind == "quadrant") {
    const auto q = rmmcop::quadrant_class(c, grid, tol > 0 ? tol : 1e-9);
    std::printf("quadrant,%s\n", rmmcop::to_string(q).c_str());
    return kExitOk;
  }
  throw CLI::ValidationError("--kind must be rho, tau, tails or quadrant");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

int cmd_table(const std::string& kind, const std::string& out_path,
              const std::string& bases, const std::string& a_list,
              const std::string& b_list, int n_max, double tol, int threads) {
  rmmcop::TableConfig config;
  config.kind = kind == "rho" ? rmmcop::MeasureKind::rho
                              : rmmcop::MeasureKind::tau;
  config.tol = tol;
  config.threads = threads;
  if (!a_list.empty()) config.a_values = parse_list(a_list);
  if (!b_list.empty()) config.b_values = parse_list(b_list);
  config.n_values.clear();
  for (int n = 0; n <= n_max; ++n) config.n_values.push_back(n);

  const auto all = rmmcop::reference_table_bases();
  std::stringstream ss(bases);
  std::string name;
  while (std::getline(ss, name, ',')) {
    const auto it = std::find_if(all.begin(), all.end(),
                                 [&](const auto& b) { return b.first == name; });
    if (it == all.end())
      throw CLI::ValidationError("unknown table base '" + name + "'");
    config.bases.push_back(*it);
  }

  const auto cells = rmmcop::table_run(config);
  if (out_path.empty() || out_path == "-") {
    rmmcop::write_table_csv(std::cout, cells);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "'");
    rmmcop::write_table_csv(out, cells);
  }
  return kExitOk;
}

int cmd_sample(const std::string& spec_path, std::size_t n,
               std::uint64_t seed, const std::string& out_path,
               bool write_meta) {
  const std::string spec_text = read_file(spec_path);
  const rmmcop::ParsedCopula copula = rmmcop::parse_spec(spec_text);
  rmmcop::SampleBatch batch;
  if (copula.bivariate) {
    batch = rmmcop::sample2(*copula.bivariate, n, seed);
  } else if (copula.dim == 3) {
    batch = rmmcop::sample3(*copula.ncopula, n, seed);
  } else {
    throw std::runtime_error("sampling supports 2- and 3-dimensional specs");
  }
  rmmcop::export_csv(batch, out_path);
  if (write_meta) {
    std::ofstream meta(out_path + ".meta");
    meta << "{\"seed\":" << seed << ",\"n\":" << n << ",\"spec\":" << spec_text
         << "}\n";
  }
  return kExitOk;
}

int cmd_limit_diff(const std::string& spec_path, int n_max) {
  const rmmcop::ParsedCopula copula = rmmcop::parse_spec(read_file(spec_path));
  if (!copula.rmm_parts)
    throw std::runtime_error(
        "limit-diff expects an rmm, rmm_iter or rmm_limit spec");
  const auto& parts = *copula.rmm_parts;
  const auto limit = rmmcop::rmm_limit(parts.c_dot, parts.f, parts.g, 1e-10);
  const int grid = 21;
  for (int n = 0; n <= n_max; ++n) {
    const auto iter = rmmcop::rmm_iter(parts.c_dot, parts.f, parts.g, n);
    double sup = 0.0;
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        const double u = double(i) / (grid - 1);
        const double v = double(j) / (grid - 1);
        sup = std::max(sup, std::abs(iter(u, v) - limit(u, v)));
      }
    std::printf("%d,%.6e\n", n, sup);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reflected maxmin copula toolkit"};
  app.require_subcommand(1);

  std::string spec_path, out_path, kind = "rho";
  std::vector<std::string> points;
  int grid = 101, table_n_max = 4, diff_n_max = 40, threads = 0;
  std::size_t n = 5000;
  std::uint64_t seed = 42;
  double tol = 0.0;
  bool write_meta = false;
  std::string bases = "pi,m,w,clayton", a_list, b_list;

  auto* eval = app.add_subcommand("eval", "evaluate a copula at points");
  eval->add_option("--spec", spec_path, "spec document")->required();
  eval->add_option("--point", points, "point u,v[,w] (repeatable)")
      ->required();

  auto* validate = app.add_subcommand("validate", "check the copula axioms");
  validate->add_option("--spec", spec_path)->required();
  validate->add_option("--grid", grid, "grid resolution");
  validate->add_option("--tol", tol, "tolerance");

  auto* measures =
      app.add_subcommand("measures", "dependence measures of a spec");
  measures->add_option("--spec", spec_path)->required();
  measures->add_option("--kind", kind, "rho|tau|tails|quadrant");
  measures->add_option("--tol", tol);
  measures->add_option("--grid", grid);

  auto* table = app.add_subcommand(
      "table", "dependence-measure table over the reference lattice");
  table->add_option("--kind", kind, "rho|tau")
      ->required()
      ->check(CLI::IsMember({"rho", "tau"}));
  table->add_option("--out", out_path, "output CSV path (default stdout)");
  table->add_option("--bases", bases, "comma list from pi,m,w,clayton");
  table->add_option("--a-values", a_list, "comma list, default 0.1,0.5,0.9");
  table->add_option("--b-values", b_list, "comma list, default 0.1,0.5,0.9");
  table->add_option("--n-max", table_n_max, "iteration columns 0..n-max");
  table->add_option("--tol", tol);
  table->add_option("--threads", threads);

  auto* sample = app.add_subcommand("sample", "draw a reproducible sample");
  sample->add_option("--spec", spec_path)->required();
  sample->add_option("--n", n, "number of points");
  sample->add_option("--seed", seed, "rng seed");
  sample->add_option("--out", out_path, "output CSV path")->required();
  sample->add_flag("--meta", write_meta, "write a .meta companion file");

  auto* limit_diff = app.add_subcommand(
      "limit-diff", "sup distance of iterates to the limit copula");
  limit_diff->add_option("--spec", spec_path)->required();
  limit_diff->add_option("--n-max", diff_n_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(eval)) return cmd_eval(spec_path, points);
    if (app.got_subcommand(validate))
      return cmd_validate(spec_path, grid, tol > 0 ? tol : 1e-8);
    if (app.got_subcommand(measures))
      return cmd_measures(spec_path, kind, tol, grid);
    if (app.got_subcommand(table))
      return cmd_table(kind, out_path, bases, a_list, b_list, table_n_max,
                       tol, threads);
    if (app.got_subcommand(sample))
      return cmd_sample(spec_path, n, seed, out_path, write_meta);
    if (app.got_subcommand(limit_diff))
      return cmd_limit_diff(spec_path, diff_n_max);
  } catch (const rmmcop::SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
