#include <doctest.h>

#include <stdexcept>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rmmcop/sampling.hpp"
#include "rmmcop/transforms.hpp"

using namespace rmmcop;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double empirical_cdf2(const SampleBatch& b, double u, double v) {
  std::size_t count = 0;
  for (const auto& p : b.points)
    if (p[0] <= u && p[1] <= v) ++count;
  return double(count) / double(b.points.size());
}

}  // namespace

TEST_CASE("comonotone samples sit on the diagonal") {
  const auto batch = sample2(comonotone(), 2000, 99);
  for (const auto& p : batch.points) CHECK(std::abs(p[0] - p[1]) <= 1e-6);
}

TEST_CASE("independent samples reproduce the cdf") {
  const auto batch = sample2(independence(), 10000, 123);
  CHECK(empirical_cdf2(batch, 0.5, 0.5) == doctest::Approx(0.25).epsilon(0.06));
}

TEST_CASE("samples stay above the zero curve") {
  const auto f = Generator::scaled_complement(0.5);
  const auto g = Generator::scaled_complement(0.1);
  const auto c = rmm(independence(), f, g);
  const auto batch = sample2(c, 5000, 2024);
  for (const auto& p : batch.points)
    CHECK(1.0 - f.f_star(p[0]) * g.f_star(p[1]) >= -1e-9);
}

TEST_CASE("a singular curve attracts a visible fraction of the sample") {
  // reflected comonotone base with tent/quadratic generators concentrates
  // mass on the curve fhat(u) + ghat(v) = 1
  const auto f = Generator::tent();
  const auto g = Generator::quadratic(1.0);
  const auto c = rmm(flip_second(comonotone()), f, g);
  const auto batch = sample2(c, 3000, 31);
  std::size_t near = 0;
  for (const auto& p : batch.points)
    if (std::abs(f.f_hat(p[0]) + g.f_hat(p[1]) - 1.0) <= 1e-4) ++near;
  // an absolutely continuous law would put ~1e-4 of the sample there
  CHECK(double(near) / double(batch.points.size()) > 0.02);
}

TEST_CASE("trivariate independence sampler") {
  const auto batch = sample3(independence_n(3), 10000, 8);
  std::size_t count = 0;
  for (const auto& p : batch.points)
    if (p[0] <= 0.5 && p[1] <= 0.5 && p[2] <= 0.5) ++count;
  CHECK(double(count) / 10000.0 == doctest::Approx(0.125).epsilon(0.16));
}

TEST_CASE("trivariate comonotone sampler") {
  const auto batch = sample3(comonotone_n(3), 1000, 77);
  for (const auto& p : batch.points) {
    CHECK(std::abs(p[1] - p[0]) <= 1e-5);
    CHECK(std::abs(p[2] - p[0]) <= 1e-5);
  }
}

TEST_CASE("trivariate sampler avoids the zero region") {
  const auto g = Generator::scaled_complement(0.5);
  const auto c = rmm_n(independence_n(3), {g, g, g}, 1);
  const auto batch = sample3(c, 2000, 424242);
  for (const auto& p : batch.points) {
    const double boundary = (1.0 - p[0]) / (1.0 + 3.0 * p[0]);
    CHECK(p[1] >= boundary - 1e-6);
    CHECK(p[2] >= boundary - 1e-6);
  }
}

TEST_CASE("csv export") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "rmmcop_test_batch.csv";

  SampleBatch two;
  two.dim = 2;
  two.seed = 1;
  two.points = {{0.125, 0.25, 0.0}, {1.0 / 3.0, 0.75, 0.0}};
  export_csv(two, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "u1,u2");
  std::getline(in, line);
  CHECK(line == "0.125,0.25");
  std::getline(in, line);
  CHECK(line == "0.3333333333,0.75");
  CHECK_FALSE(std::getline(in, line));

  SampleBatch empty;
  empty.dim = 3;
  export_csv(empty, path);
  CHECK(slurp(path) == "u1,u2,u3\n");

  CHECK_THROWS(export_csv(two, dir / "no_such_dir" / "x.csv"));
  std::filesystem::remove(path);
}

TEST_CASE("fixed seeds give byte-identical exports") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "rmmcop_det_a.csv";
  const auto b = dir / "rmmcop_det_b.csv";
  const auto c = rmm(independence(), Generator::power(0.5),
                     Generator::power(0.5));
  export_csv(sample2(c, 500, 42), a);
  export_csv(sample2(c, 500, 42), b);
  CHECK(slurp(a) == slurp(b));
  export_csv(sample2(c, 500, 43), b);
  CHECK(slurp(a) != slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("empirical cdf tracks the analytic one") {
  const std::size_t n = 10000;
  const double bound = 1.63 / std::sqrt(double(n)) + 0.01;
  const auto c = efgm(-1.0);
  const auto batch = sample2(c, n, 5150);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      const double u = i / 6.0, v = j / 6.0;
      CHECK(std::abs(empirical_cdf2(batch, u, v) - c(u, v)) <= bound);
    }
}

TEST_CASE("trivariate singular components carry their mass") {
  // tent + two full complements over the product base: no absolutely
  // continuous part remains, the mass splits between a curve and a surface
  const auto c = rmm_n(independence_n(3),
                       {Generator::tent(), Generator::scaled_complement(1.0),
                        Generator::scaled_complement(1.0)},
                       1);
  const auto batch = sample3(c, 3000, 2025);
  std::size_t on_curve = 0, on_surface = 0;
  for (const auto& p : batch.points) {
    if (p[0] >= 0.5 - 1e-4 && std::abs(p[1] - (1.0 - p[0])) <= 1e-4 &&
        std::abs(p[2] - (1.0 - p[0])) <= 1e-4)
      ++on_curve;  // u2 = u3 = 1 - u1
    else if (p[0] <= 0.5 + 1e-4 && p[1] >= 0.5 - 1e-4 &&
             std::abs(p[1] - p[2]) <= 1e-4)
      ++on_surface;  // u2 = u3
  }
  CHECK(double(on_curve) / 3000.0 > 0.4);
  CHECK(double(on_surface) / 3000.0 > 0.4);
  CHECK(on_curve + on_surface > 2900);

  // halving the third complement bends the surface to u3 = u2 / (2 - u2)
  const auto c2 = rmm_n(independence_n(3),
                        {Generator::tent(), Generator::scaled_complement(1.0),
                         Generator::scaled_complement(0.5)},
                        1);
  const auto batch2 = sample3(c2, 3000, 7);
  std::size_t bent = 0;
  for (const auto& p : batch2.points)
    if (p[0] <= 0.5 + 1e-4 && p[1] >= 0.5 - 1e-4 &&
        std::abs(p[2] - p[1] / (2.0 - p[1])) <= 1e-4)
      ++bent;
  CHECK(double(bent) / 3000.0 > 0.3);
}

TEST_CASE("invalid conditional laws are reported") {
  // the section along u wobbles, so the conditional cdf is not monotone
  const BivariateCopula bogus(
      [](double u, double v) {
        return u * (v + 0.2 * std::sin(2.0 * M_PI * v));
      },
      "not-a-copula");
  CHECK_THROWS_WITH_AS(static_cast<void>(sample2(bogus, 10, 1)),
                       doctest::Contains("conditional cdf decreases"),
                       std::runtime_error);
}
