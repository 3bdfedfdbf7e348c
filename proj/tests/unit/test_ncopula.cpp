#include <doctest.h>

#include <stdexcept>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "rmmcop/ncopula.hpp"
#include "rmmcop/transforms.hpp"

using namespace rmmcop;

namespace {

std::vector<double> random_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> u(n);
  for (auto& x : u) x = unif(rng);
  return u;
}

}  // namespace

TEST_CASE("flip_vars") {
  const auto flipped = flip_vars(comonotone_n(2), {1});
  const std::array<double, 2> p{0.6, 0.6};
  CHECK(flipped(p) == doctest::Approx(0.2));

  const auto twice = flip_vars(flip_vars(independence_n(3), {1}), {1});
  const std::array<double, 3> q{0.3, 0.5, 0.9};
  CHECK(twice(q) == doctest::Approx(0.135).epsilon(1e-12));

  const auto pi_flip = flip_vars(independence_n(3), {1, 2});
  const std::array<double, 3> r{0.5, 0.5, 0.5};
  CHECK(pi_flip(r) == doctest::Approx(0.125).epsilon(1e-12));

  CHECK_THROWS_AS(flip_vars(independence_n(3), {}), std::invalid_argument);
  CHECK_THROWS_AS(flip_vars(independence_n(3), {3}), std::invalid_argument);
}

TEST_CASE("mm_n basics") {
  // identity generators leave the base untouched
  std::vector<MMGenerator> ids{MMGenerator::identity(MMKind::F1),
                               MMGenerator::identity(MMKind::F2),
                               MMGenerator::identity(MMKind::F2)};
  const auto same = mm_n(independence_n(3), ids, 1);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const auto u = random_point(rng, 3);
    CHECK(same(u) == doctest::Approx(independence_n(3)(u)).epsilon(1e-12));
  }

  // groundedness
  const std::array<double, 3> edge{0.4, 0.0, 0.9};
  CHECK(same(edge) == 0.0);

  // bivariate reduction
  std::vector<MMGenerator> pair{MMGenerator::f1(Generator::power(0.5)),
                                MMGenerator::identity(MMKind::F2)};
  const auto two = mm_n(independence_n(2), pair, 1);
  const auto direct = mm(independence(), pair[0], pair[1]);
  const std::array<double, 2> p{0.4, 0.7};
  CHECK(std::abs(two(p) - direct(0.4, 0.7)) <= 1e-12);

  CHECK_THROWS_AS(mm_n(independence_n(3), ids, 3), std::invalid_argument);
  CHECK_THROWS_AS(mm_n(independence_n(2), ids, 1), std::invalid_argument);
  std::vector<MMGenerator> wrong{MMGenerator::identity(MMKind::F2),
                                 MMGenerator::identity(MMKind::F2)};
  CHECK_THROWS_AS(mm_n(independence_n(2), wrong, 1), std::invalid_argument);
}

TEST_CASE("rmm_n basics") {
  const std::vector<Generator> gens(3, Generator::scaled_complement(0.5));
  const auto t = rmm_n(independence_n(3), gens, 1);

  const std::array<double, 3> ones{1.0, 1.0, 1.0};
  CHECK(t(ones) == doctest::Approx(1.0));

  // on the boundary of the zero region: u2 = (1-u1)/(1+3u1)
  const std::array<double, 3> boundary{0.5, 0.2, 0.5};
  CHECK(t(boundary) == 0.0);
  const std::array<double, 3> inside{0.5, 0.5, 0.5};
  CHECK(t(inside) > 0.0);

  // bivariate reduction
  const std::vector<Generator> pair(2, Generator::quadratic(1.0));
  const auto two = rmm_n(independence_n(2), pair, 1);
  const auto direct = rmm(independence(), pair[0], pair[1]);
  const std::array<double, 2> p{0.3, 0.8};
  CHECK(std::abs(two(p) - direct(0.3, 0.8)) <= 1e-12);
}

TEST_CASE("rmm_3 matches the general form") {
  const auto g = Generator::scaled_complement(0.5);
  const auto general = rmm_n(independence_n(3), {g, g, g}, 1);
  const auto special = rmm_3(independence_n(3), g, g, g);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto u = random_point(rng, 3);
    CHECK(std::abs(general(u) - special(u)) <= 1e-12);
  }
  const std::array<double, 3> deep{0.5, 0.5, 0.1};
  CHECK(special(deep) == 0.0);  // u3 below the zero boundary 0.2
}

TEST_CASE("reflected and plain multivariate forms agree through flips") {
  std::mt19937_64 rng(23);
  const std::vector<Generator> pool{
      Generator::quadratic(0.5), Generator::power(0.5),
      Generator::quadratic(1.0), Generator::scaled_complement(0.5)};
  for (const auto& [n, p] : std::vector<std::pair<int, int>>{
           {3, 1}, {3, 2}, {4, 2}}) {
    for (bool product_base : {true, false}) {
      const NCopula base =
          product_base ? independence_n(n) : comonotone_n(n);
      std::vector<int> min_coords;
      for (int i = p; i < n; ++i) min_coords.push_back(i);

      std::vector<Generator> gens(pool.begin(), pool.begin() + n);
      std::vector<MMGenerator> mm_gens;
      for (int i = 0; i < n; ++i)
        mm_gens.push_back(i < p ? MMGenerator::f1(gens[i])
                                : MMGenerator::f2(gens[i]));

      const auto reflected_base = flip_vars(base, min_coords);
      const auto a = rmm_n(reflected_base, gens, p);
      const auto b = flip_vars(mm_n(base, mm_gens, p), min_coords);
      for (int k = 0; k < 60; ++k) {
        const auto u = random_point(rng, n);
        CHECK(std::abs(a(u) - b(u)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("grounding and margins on coordinate grids") {
  const auto g = Generator::scaled_complement(0.5);
  const std::vector<NCopula> fixtures{
      independence_n(3), comonotone_n(4),
      rmm_n(independence_n(3), {g, g, g}, 1)};
  for (const auto& c : fixtures) {
    INFO(c.label());
    const int n = c.dim();
    std::vector<double> u(n);
    for (int axis = 0; axis < n; ++axis) {
      for (int i = 0; i <= 20; ++i) {
        const double x = i / 20.0;
        std::fill(u.begin(), u.end(), 1.0);
        u[axis] = x;
        CHECK(std::abs(c.raw(u) - x) <= 1e-9);
        std::fill(u.begin(), u.end(), x);
        u[axis] = 0.0;
        CHECK(std::abs(c.raw(u)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("box mass stays nonnegative on a trivariate lattice") {
  const auto g = Generator::scaled_complement(0.5);
  const auto t = rmm_n(independence_n(3), {g, g, g}, 1);
  const int cells = 9;
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j)
      for (int k = 0; k < cells; ++k) {
        const std::array<double, 3> lo{double(i) / cells, double(j) / cells,
                                       double(k) / cells};
        const std::array<double, 3> hi{double(i + 1) / cells,
                                       double(j + 1) / cells,
                                       double(k + 1) / cells};
        CHECK(n_box_volume(t, lo, hi) >= -1e-8);
      }
}

TEST_CASE("construction and volume guards") {
  const auto g = Generator::zero();
  CHECK_THROWS_AS(rmm_3(independence_n(4), g, g, g), std::invalid_argument);
  CHECK_THROWS_AS(rmm_n(independence_n(3), {g, g}, 1), std::invalid_argument);
  const std::array<double, 3> lo{0.5, 0.2, 0.2};
  const std::array<double, 3> hi{0.4, 0.8, 0.8};
  CHECK_THROWS_AS(n_box_volume(independence_n(3), lo, hi),
                  std::invalid_argument);
  const std::array<double, 2> short_point{0.5, 0.5};
  CHECK_THROWS_AS(independence_n(3)(short_point), std::invalid_argument);
}

TEST_CASE("max-min simplification rule") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int k = 0; k < 10000; ++k) {
    const double a = unif(rng), b = unif(rng);
    const double lhs =
        std::max(0.0, a) - std::max(0.0, std::min(a, b));
    const double rhs = std::max(0.0, std::min(a, a - b));
    CHECK(std::abs(lhs - rhs) <= 1e-15);
  }
}
