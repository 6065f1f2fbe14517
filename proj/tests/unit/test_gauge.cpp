#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fdlab/data.hpp"
#include "fdlab/error.hpp"
#include "fdlab/evolve.hpp"
#include "fdlab/gauge.hpp"
#include "fdlab/spectral.hpp"

using namespace fdlab;

namespace {

GaugeConfig config(std::vector<double> a, double L = 10.0, int m = 4) {
  GaugeConfig c;
  c.L = L;
  c.m = m;
  c.a = std::move(a);
  return c;
}

GaugeConfig off(std::vector<double> a, int m) {
  GaugeConfig c = config(std::move(a), 10.0, m);
  c.gauge_off = true;
  return c;
}

SpectralField random_state(const Grid& g, std::size_t n, Rng& rng, double scale) {
  SpectralField f = random_perturbation(g, n, 0, rng);
  f *= scale;
  return f;
}

}  // namespace

TEST_CASE("gauge_phi") {
  const Grid g(16.0, 512);
  CHECK(gauge_phi(SpectralField(g, 2)).field.sup_norm() == 0.0);
  SUBCASE("Gaussian mass") {
    const auto q = SpectralField::from_function(g, 1, [](std::size_t, double x) { return std::exp(-x * x); });
    const auto phi = gauge_phi(q).field;
    CHECK(phi(0, g.points() - 1).real() == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-8));
  }
  SUBCASE("monotone, nonnegative and bounded by the mass") {
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto q = random_state(g, 2, rng, 1.0);
      const auto phi = gauge_phi(q).field;
      const double mass = std::pow(l2_norm(q), 2);
      CHECK(phi(0, 0).real() == 0.0);
      for (std::size_t i = 1; i < g.points(); ++i) {
        CHECK(phi(0, i).real() >= phi(0, i - 1).real());
        CHECK(phi(0, i).imag() == 0.0);
      }
      CHECK(phi(0, g.points() - 1).real() <= mass * (1 + 1e-10));
    }
  }
  SUBCASE("translation equivariance in the interior") {
    Rng rng(2);
    const auto q = random_state(g, 1, rng, 1.0);
    SpectralField shifted(g, 1);
    for (std::size_t i = 0; i < g.points(); ++i) shifted(0, (i + 3) % g.points()) = q(0, i);
    const auto a = gauge_phi(q).field, b = gauge_phi(shifted).field;
    for (std::size_t i = g.points() / 10; i < g.points() * 9 / 10; ++i)
      CHECK(std::abs(b(0, i + 3) - a(0, i)) < 1e-8);
  }
}

TEST_CASE("gauged_variable") {
  const Grid g(16.0, 256);
  Rng rng(3);
  SUBCASE("gauge off gives the plain derivative") {
    const auto q = random_state(g, 2, rng, 1.0);
    const auto v = gauged_variable(q, off({1.0, -2.0}, 3));
    CHECK((v - fourier_derivative(q, 3)).sup_norm() == 0.0);
  }
  SUBCASE("zero state") {
    CHECK(gauged_variable(SpectralField(g, 1), config({1.0})).sup_norm() == 0.0);
  }
  SUBCASE("triangle bound on random states") {
    for (int trial = 0; trial < 100; ++trial) {
      const std::vector<double> a = {rng.uniform(0.5, 2.0), -rng.uniform(0.5, 2.0)};
      const auto cfg = config(a, rng.uniform(2.0, 50.0), 4);
      const auto q = random_state(g, 2, rng, rng.uniform(0.1, 2.0));
      const double bound = l2_norm(fourier_derivative(q, 4)) +
                           cfg.L / (4.0 * std::min(std::abs(a[0]), std::abs(a[1]))) *
                               std::pow(l2_norm(q), 2) * l2_norm(fourier_derivative(q, 3));
      CHECK(l2_norm(gauged_variable(q, cfg)) <= bound * (1 + 1e-10));
    }
  }
  SUBCASE("mismatch and invalid configs") {
    const auto q = random_state(g, 2, rng, 1.0);
    CHECK_THROWS_AS(gauged_variable(q, config({1.0})), InvalidArgument);
    CHECK_THROWS_AS(gauged_variable(q, config({1.0, 0.0})), InvalidArgument);
    CHECK_THROWS_AS(gauged_variable(q, config({1.0, 1.0}, 0.5)), InvalidArgument);
    CHECK_THROWS_AS(gauged_variable(q, config({1.0, 1.0}, 10.0, 0)), InvalidArgument);
  }
}

TEST_CASE("energy") {
  const Grid g(16.0, 256);
  Rng rng(4);
  SUBCASE("zero state") {
    const auto e = energy(SpectralField(g, 1), config({1.0}));
    CHECK(e.energy == 0.0);
    CHECK(e.sandwich_lower == 0.0);
    CHECK(e.sandwich_upper == 0.0);
    CHECK(e.sandwich_holds);
  }
  SUBCASE("gauge off equals the H^m norm") {
    const auto q = random_state(g, 1, rng, 1.0);
    const auto e = energy(q, off({1.0}, 4));
    CHECK(e.energy == doctest::Approx(sobolev_norm(q, 4)).epsilon(1e-14));
  }
  SUBCASE("identity and sandwich on random states") {
    for (int trial = 0; trial < 50; ++trial) {
      const auto cfg = config({rng.uniform(0.2, 2.0)}, rng.uniform(2.0, 50.0), 1 + trial % 6);
      const auto q = random_state(g, 1, rng, rng.uniform(0.05, 3.0));
      const auto e = energy(q, cfg);
      const double e2 = e.energy * e.energy;
      CHECK(std::abs(e2 - (e.v_norm * e.v_norm + e.lower_norm * e.lower_norm)) <= 1e-12 * e2);
      CHECK(e.sandwich_holds);
      CHECK(e.hm_norm * e.hm_norm <= e.c1 * e2 * (1 + 1e-12));
      CHECK(e2 <= e.c2 * e.hm_norm * e.hm_norm * (1 + 1e-12));
    }
  }
}

TEST_CASE("difference_energy") {
  const Grid g(16.0, 256);
  Rng rng(5);
  const auto cfg = config({1.0, 0.5}, 10.0, 4);
  const auto qa = random_state(g, 2, rng, 0.5), qb = random_state(g, 2, rng, 0.5);
  CHECK(difference_energy(qa, qa, cfg).energy == 0.0);
  SUBCASE("k = 1 without gauge is the H^1 norm of the difference") {
    const auto e = difference_energy(qa, qb, off({1.0, 0.5}, 1));
    CHECK(e.energy == doctest::Approx(sobolev_norm(qa - qb, 1)).epsilon(1e-14));
  }
  SUBCASE("difference against zero is the energy itself") {
    const auto d = difference_energy(qa, SpectralField(g, 2), cfg);
    const auto e = energy(qa, cfg);
    CHECK(d.energy == e.energy);
    CHECK(d.v_norm == e.v_norm);
  }
  SUBCASE("comparable with the H^k norm of the difference") {
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = random_state(g, 2, rng, rng.uniform(0.1, 2.0));
      const auto b = random_state(g, 2, rng, rng.uniform(0.1, 2.0));
      const auto e = difference_energy(a, b, cfg);
      CHECK(e.sandwich_holds);
    }
  }
  CHECK_THROWS_AS(difference_energy(qa, SpectralField(g, 1), cfg), InvalidArgument);
}

TEST_CASE("gronwall_rate") {
  SUBCASE("pure exponential is fitted exactly") {
    std::vector<double> t, e;
    for (int i = 0; i < 10; ++i) {
      t.push_back(0.1 * i);
      e.push_back(3.0 * std::exp(1.7 * 0.1 * i));
    }
    const auto r = gronwall_rate(t, e);
    CHECK(r.fit.rate == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(r.fit.envelope_holds);
    CHECK(r.fit.residual < 1e-12);
  }
  SUBCASE("degenerate seed") {
    std::vector<double> t = {0, 1, 2, 3, 4, 5, 6, 7}, e = {0, 0, 1, 1, 1, 1, 1, 1};
    CHECK(gronwall_rate(t, e).fit.degenerate_seed);
  }
  SUBCASE("too few samples") {
    std::vector<double> t = {0, 1, 2}, e = {1, 1, 1};
    CHECK_THROWS_AS(gronwall_rate(t, e), InvalidArgument);
  }
  SolverConfig sc;
  sc.points = 256;
  sc.dt = 1e-3;
  sc.horizon = 0.1;
  sc.snapshot_stride = 10;
  SUBCASE("linear flow without gauge has zero rate") {
    const SystemSpec lin{{1.0}, {0.0}, {1.0}, NonlinearitySpec(1)};
    const auto traj = solve(gaussian_data(sc.grid(), 1, 0.1, {1.0}), lin, sc);
    const auto r = gronwall_rate(traj, off({1.0}, 4));
    CHECK(std::abs(r.fit.rate) < 1e-6);
    CHECK(r.fit.envelope_holds);
  }
  SUBCASE("4shro: envelope holds and larger data does not lower the rate") {
    const auto sys = builtin_4shro(1.0, {1, 1, 1, 1, 1, 1});
    const auto cfg = config({1.0}, 10.0, 4);
    const auto small = gronwall_rate(solve(gaussian_data(sc.grid(), 1, 0.1), sys, sc), cfg);
    const auto large = gronwall_rate(solve(gaussian_data(sc.grid(), 1, 0.2), sys, sc), cfg);
    CHECK(small.fit.envelope_holds);
    CHECK(large.fit.envelope_holds);
    CHECK(std::abs(large.fit.rate) >= std::abs(small.fit.rate));
  }
}
