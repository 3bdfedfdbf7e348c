#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "rmmcop/measures.hpp"
#include "rmmcop/transforms.hpp"

using namespace rmmcop;

TEST_CASE("spearman rho") {
  CHECK(std::abs(spearman_rho(independence(), 1e-6).value) <= 1e-6);

  const auto iterate = rmm_iter(independence(), Generator::power(0.5),
                                Generator::power(0.5), 1);
  CHECK(spearman_rho(iterate).value == doctest::Approx(-0.2952).epsilon(0.005));

  // reflection negates concordance, so the reflected Clayton sits at +0.6844
  CHECK(spearman_rho(flip_second(clayton(-0.7))).value ==
        doctest::Approx(0.6844).epsilon(0.005));
  CHECK(spearman_rho(clayton(-0.7)).value ==
        doctest::Approx(-0.6844).epsilon(0.005));
}

TEST_CASE("kendall tau") {
  CHECK(kendall_tau(flip_second(comonotone())).value ==
        doctest::Approx(-1.0).epsilon(0.01));

  const auto m_dot = flip_second(comonotone());
  const auto t1 = rmm_iter(m_dot, Generator::power(0.5),
                           Generator::power(0.5), 1);
  CHECK(kendall_tau(t1).value == doctest::Approx(-0.3333).epsilon(0.01));

  const auto w_dot = flip_second(countermonotone());
  const auto t2 = rmm_iter(w_dot, Generator::power(0.5),
                           Generator::power(0.5), 1);
  CHECK(std::abs(kendall_tau(t2).value) <= 0.01);

  // theta / (theta + 2) for the one-parameter family
  CHECK(kendall_tau(clayton(-0.7)).value ==
        doctest::Approx(-0.7 / 1.3).epsilon(0.002));
}

TEST_CASE("tail coefficients") {
  const auto [ml, mu] = tail_coefficients(comonotone());
  CHECK(ml.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(mu.value == doctest::Approx(1.0).epsilon(1e-6));

  const auto [pl, pu] = tail_coefficients(independence());
  CHECK(pl.value == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(pu.value == doctest::Approx(0.0).epsilon(1e-4));

  // zero generators leave the reflected base untouched
  const auto limit = rmm_limit(flip_second(comonotone()), Generator::zero(),
                               Generator::zero());
  const auto [ll, lu] = tail_coefficients(limit);
  CHECK(ll.value == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(lu.value == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("quadrant classification") {
  CHECK(quadrant_class(comonotone(), 51, 1e-9) == QuadrantClass::PQD);
  CHECK(quadrant_class(independence(), 51, 1e-9) == QuadrantClass::PQD);

  const auto nqd = rmm(independence(), Generator::quadratic(1.0),
                       Generator::quadratic(1.0));
  CHECK(quadrant_class(nqd, 101, 1e-9) == QuadrantClass::NQD);

  // a positively dependent reflected base gives no one-sided guarantee
  const auto mixed = rmm(flip_second(countermonotone()),
                         Generator::quadratic(1.0), Generator::quadratic(0.5));
  CHECK(quadrant_class(mixed, 101, 1e-9) == QuadrantClass::NEITHER);
}

TEST_CASE("table runs") {
  TableConfig config;
  config.bases = reference_table_bases();
  config.kind = MeasureKind::rho;

  SUBCASE("spot cells against the reference values") {
    config.a_values = {0.9};
    config.b_values = {0.9};
    config.n_values = {0, 4};
    const auto cells = table_run(config);
    REQUIRE(cells.size() == 8);
    // pi base, n=4
    CHECK(cells[1].value == doctest::Approx(-0.8646).epsilon(0.01));
    // w base, n=0: the reflected base is the upper bound
    CHECK(cells[4].value == doctest::Approx(1.0).epsilon(0.002));
    // clayton base, n=0 tracks the negatively dependent Clayton itself
    CHECK(cells[6].value == doctest::Approx(-0.6844).epsilon(0.002));
  }

  SUBCASE("columns stabilise between the last two iterations") {
    config.a_values = {0.9};
    config.b_values = {0.9};
    config.n_values = {3, 4};
    const auto cells = table_run(config);
    REQUIRE(cells.size() == 8);
    for (std::size_t base = 0; base < 4; ++base)
      CHECK(std::abs(cells[2 * base].value - cells[2 * base + 1].value) <=
            0.001);
  }

  SUBCASE("tau spot cell") {
    config.kind = MeasureKind::tau;
    config.bases = {reference_table_bases()[3]};
    config.a_values = {0.9};
    config.b_values = {0.1};
    config.n_values = {2};
    const auto cells = table_run(config);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].value == doctest::Approx(-0.0902).epsilon(0.01));
  }
}

TEST_CASE("table csv format") {
  std::ostringstream out;
  write_table_csv(out, {{"pi", 0.1, 0.5, 2, MeasureKind::rho, -0.07081, 1e-5}});
  CHECK(out.str() ==
        "base,a,b,n,kind,value,error\npi,0.1,0.5,2,rho,-0.0708,0.0000\n");
}

TEST_CASE("measure reports carry their sign convention across reflection") {
  for (const auto& c : {efgm(0.7), clayton(-0.7), clayton(2.0)}) {
    INFO(c.label());
    const double direct = spearman_rho(c, 1e-5).value;
    const double reflected = spearman_rho(flip_second(c), 1e-5).value;
    CHECK(std::abs(direct + reflected) <= 2e-5);
    const double tau_direct = kendall_tau(c).value;
    const double tau_reflected = kendall_tau(flip_second(c)).value;
    CHECK(std::abs(tau_direct + tau_reflected) <= 2e-3);
  }
}

TEST_CASE("sample estimates match quadrature") {
  const auto t = rmm(independence(), Generator::power(0.5),
                     Generator::power(0.5));
  const auto batch = sample2(t, 100000, 20240817);
  const auto [rho, tau] = estimate_measures(batch);
  CHECK(std::abs(rho.value - (-0.2952)) <= 3.0 * rho.error_estimate);
  const double tau_ref = kendall_tau(t).value;
  CHECK(std::abs(tau.value - tau_ref) <= 3.0 * tau.error_estimate);

  const auto pi_batch = sample2(independence(), 100000, 7);
  const auto [pr, pt] = estimate_measures(pi_batch);
  CHECK(std::abs(pr.value) <= 0.01);
  CHECK(std::abs(pt.value) <= 0.01);

  const auto m_batch = sample2(comonotone(), 1000, 3);
  SampleBatch padded = m_batch;
  const auto [mr, mt] = estimate_measures(padded);
  CHECK(mt.value == doctest::Approx(1.0));
  CHECK(mr.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("measures stay inside the unit interval") {
  const std::vector<BivariateCopula> fixtures = {
      clayton(-0.7),
      rmm_iter(flip_second(comonotone()), Generator::power(0.9),
               Generator::power(0.9), 4),
      rmm_limit(flip_second(countermonotone()), Generator::power(0.5),
                Generator::power(0.5))};
  for (const auto& c : fixtures) {
    INFO(c.label());
    CHECK(std::abs(spearman_rho(c).value) <= 1.0 + 1e-6);
    CHECK(std::abs(kendall_tau(c).value) <= 1.0 + 1e-6);
    const auto [lo, hi] = tail_coefficients(c);
    CHECK(lo.value >= -1e-9);
    CHECK(lo.value <= 1.0 + 1e-9);
    CHECK(hi.value >= -1e-9);
    CHECK(hi.value <= 1.0 + 1e-9);
  }
  // the bound copulas sit exactly on +-1; a tight quadrature tolerance keeps
  // the kinked integrals from overshooting
  CHECK(std::abs(spearman_rho(comonotone(), 1e-6).value) <= 1.0 + 1e-6);
  CHECK(std::abs(spearman_rho(countermonotone(), 1e-6).value) <= 1.0 + 1e-6);
  CHECK(std::abs(kendall_tau(comonotone()).value) <= 1.0 + 1e-6);
  CHECK(std::abs(kendall_tau(countermonotone()).value) <= 1.0 + 1e-6);
}

TEST_CASE("tails of limit copulas follow the threshold cases") {
  // both thresholds at 1: both tails vanish
  const auto p = Generator::power(0.5);
  const auto both_one = rmm_limit(independence(), p, p);
  const auto [l1, u1] = tail_coefficients(both_one);
  CHECK(std::abs(l1.value) <= 1e-4);
  CHECK(std::abs(u1.value) <= 1e-4);

  // thresholds strictly inside: the upper tail of the base shows through
  const auto tl = Generator::trunc_linear(0.5, 0.5);
  const auto inner = rmm_limit(comonotone(), tl, tl);
  const auto [l2, u2] = tail_coefficients(inner);
  CHECK(std::abs(l2.value) <= 1e-9);  // nonzero threshold kills the lower tail
  CHECK(u2.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sample estimates agree for the negatively dependent family") {
  const auto c = efgm(-1.0);
  const auto batch = sample2(c, 100000, 31337);
  const auto [rho, tau] = estimate_measures(batch);
  CHECK(std::abs(rho.value - spearman_rho(c, 1e-5).value) <=
        3.0 * rho.error_estimate);
  CHECK(std::abs(tau.value - kendall_tau(c).value) <=
        3.0 * tau.error_estimate);
}

TEST_CASE("degenerate batches are rejected") {
  SampleBatch tied;
  tied.dim = 2;
  tied.points.assign(200, {0.5, 0.5, 0.0});
  CHECK_THROWS(estimate_measures(tied));
  SampleBatch tiny;
  tiny.dim = 2;
  tiny.points.assign(10, {0.5, 0.5, 0.0});
  CHECK_THROWS_AS(estimate_measures(tiny), std::invalid_argument);
}
