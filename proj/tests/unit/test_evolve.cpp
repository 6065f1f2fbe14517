#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fdlab/data.hpp"
#include "fdlab/error.hpp"
#include "fdlab/evolve.hpp"
#include "fdlab/fit.hpp"
#include "fdlab/spectral.hpp"
#include "rk4.hpp"

using namespace fdlab;

namespace {

SystemSpec shro_all_ones() { return builtin_4shro(1.0, {1, 1, 1, 1, 1, 1}); }

SystemSpec linear_system(double a, double b, double lambda) {
  return SystemSpec{{a}, {b}, {lambda}, NonlinearitySpec(1)};
}

double sup_diff(const SpectralField& a, const SpectralField& b) { return (a - b).sup_norm(); }

}  // namespace

TEST_CASE("linear symbol") {
  const Grid g(16.0, 128);
  SUBCASE("pure fourth order is unitary") {
    const LinearSymbol s(linear_system(1.0, 0.0, 0.0), g, 0.0);
    for (std::size_t k = 0; k < g.points(); ++k) {
      const double xi = g.wavenumber(k);
      CHECK(s(0, k).real() == 0.0);
      CHECK(s(0, k).imag() == doctest::Approx(std::pow(xi, 4)));
      CHECK(std::abs(std::exp(s(0, k) * 1e-3)) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  SUBCASE("parabolic term damps") {
    const LinearSymbol s(linear_system(1.0, 0.5, 1.0), g, 0.5);
    for (std::size_t k = 1; k < g.points(); ++k) {
      CHECK(s(0, k).real() == doctest::Approx(-std::pow(0.5, 5) * std::pow(g.wavenumber(k), 4)));
      CHECK(s(0, k).real() < 0.0);
    }
  }
  SUBCASE("plane-wave dispersion relation") {
    const double nu = 0.8;
    const LinearSymbol s(builtin_4shro(nu, {0, 0, 0, 0, 0, 0}), g, 0.0);
    const std::size_t k0 = 5;
    const double xi = g.wavenumber(k0), t = 0.37;
    const auto q0 = SpectralField::from_function(g, 1, [&](std::size_t, double x) { return std::polar(1.0, xi * x); });
    Spectrum sp = q0.to_spectrum();
    for (std::size_t k = 0; k < g.points(); ++k) sp(0, k) *= std::exp(s(0, k) * t);
    const SpectralField q = sp.to_physical();
    const cplx phase = std::polar(1.0, (nu * std::pow(xi, 4) - xi * xi) * t);
    for (std::size_t i = 0; i < g.points(); ++i) CHECK(std::abs(q(0, i) - phase * q0(0, i)) < 1e-12);
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(LinearSymbol(linear_system(0.0, 0.0, 0.0), g, 0.0), InvalidArgument);
    CHECK_THROWS_AS(LinearSymbol(linear_system(1.0, 0.0, 0.0), g, 1.0), InvalidArgument);
    CHECK_THROWS_AS(LinearSymbol(linear_system(1.0, 0.0, 0.0), g, -0.1), InvalidArgument);
  }
}

TEST_CASE("ETDRK4 weights") {
  // Contour and direct evaluation must agree where both are accurate.
  for (double r : {0.9, 1.1, 3.0}) {
    for (double th : {0.0, 1.0, 2.0, 3.0}) {
      const cplx z = std::polar(r, th);
      const auto w = EtdRk4::weights(z, 1.0);
      const cplx ez = std::exp(z);
      CHECK(std::abs(w.q - (std::exp(z / 2.0) - 1.0) / z) < 1e-12);
      CHECK(std::abs(w.f2 - (2.0 + z + ez * (z - 2.0)) / (z * z * z)) < 1e-10);
    }
  }
  // Limits at z = 0: Q = 1/2, f1 = 1/6, f2 = 1/6, f3 = 1/6.
  const auto w0 = EtdRk4::weights(0.0, 1.0);
  CHECK(std::abs(w0.q - 0.5) < 1e-14);
  CHECK(std::abs(w0.f1 - 1.0 / 6.0) < 1e-14);
  CHECK(std::abs(w0.f2 - 1.0 / 6.0) < 1e-14);
  CHECK(std::abs(w0.f3 - 1.0 / 6.0) < 1e-14);
}

TEST_CASE("step") {
  const Grid g(16.0, 128);
  const SpectralField q0 = gaussian_data(g, 1, 0.1, {0.0});
  SUBCASE("linear step is the exact multiplier") {
    const auto sys = linear_system(1.0, 0.3, 1.0);
    const LinearSymbol s(sys, g, 0.0);
    const double dt = 1e-2;
    const SpectralField out = step(q0, 0.0, dt, sys, s);
    Spectrum sp = q0.to_spectrum();
    for (std::size_t k = 0; k < g.points(); ++k) sp(0, k) *= std::exp(s(0, k) * dt);
    CHECK(sup_diff(out, sp.to_physical()) < 1e-15);
    CHECK(std::abs(sobolev_norm(out, 4) / sobolev_norm(q0, 4) - 1.0) < 1e-13);
  }
  SUBCASE("parabolic linear step never increases L2") {
    const auto sys = linear_system(1.0, 0.0, 1.0);
    const LinearSymbol s(sys, g, 0.5);
    SpectralField q = q0;
    for (int i = 0; i < 10; ++i) {
      const SpectralField next = step(q, i * 0.01, 0.01, sys, s);
      CHECK(l2_norm(next) <= l2_norm(q));
      q = next;
    }
    CHECK(l2_norm(q) < l2_norm(q0));
  }
  SUBCASE("one nonlinear step matches RK4 sub-stepping") {
    const auto sys = shro_all_ones();
    const LinearSymbol s(sys, g, 0.0);
    const double dt = 1e-4;
    const SpectralField etd = step(q0, 0.0, dt, sys, s);
    const Evolver ev(sys, s, dt);
    const SpectralField ref = rk4::integrate(ev, q0.to_spectrum(), dt, 100).to_physical();
    CHECK(sup_diff(etd, ref) < 1e-9);
  }
  SUBCASE("non-finite results raise BlowUp with the time") {
    const auto sys = shro_all_ones();
    const LinearSymbol s(sys, g, 0.0);
    const Evolver ev(sys, s, 1e-3);
    Spectrum bad = q0.to_spectrum();
    bad(0, 3) = {INFINITY, 0.0};
    try {
      (void)ev.advance(bad, 0.5);
      FAIL("expected BlowUp");
    } catch (const BlowUp& e) {
      CHECK(e.time() == doctest::Approx(0.501));
    }
  }
  SUBCASE("stability budget") {
    const auto sys = shro_all_ones();
    const LinearSymbol s(sys, g, 0.0);
    const SpectralField big = gaussian_data(g, 1, 5.0, {0.0});
    CHECK(nonlinear_stiffness(sys.nonlinearity, big) > nonlinear_stiffness(sys.nonlinearity, q0));
    CHECK_THROWS_AS(step(big, 0.0, 0.1, sys, s), InvalidArgument);
  }
}

TEST_CASE("solve") {
  SolverConfig cfg;
  cfg.points = 128;
  cfg.dt = 1e-3;
  cfg.horizon = 0.05;
  const Grid g = cfg.grid();

  SUBCASE("uniform step count") {
    SolverConfig c;
    c.dt = 1e-4;
    c.horizon = 0.25;
    CHECK(c.steps() == 2500);
    c.dt = 0.3;
    c.horizon = 1.0;
    CHECK(c.steps() == 4);
    CHECK(c.effective_dt() * 4 == doctest::Approx(1.0));
    CHECK(c.effective_dt() <= c.dt);
  }
  SUBCASE("zero data stays zero") {
    const auto traj = solve(SpectralField(g, 1), shro_all_ones(), cfg);
    for (const auto& s : traj.snapshots) {
      CHECK(s.q.sup_norm() == 0.0);
      for (double v : s.diagnostics.sobolev) CHECK(v == 0.0);
      CHECK(s.diagnostics.energy == 0.0);
    }
  }
  SUBCASE("stride semantics") {
    const SpectralField q0 = gaussian_data(g, 1, 0.1);
    auto traj = solve(q0, shro_all_ones(), cfg);
    REQUIRE(traj.snapshots.size() == 2);
    CHECK(traj.front().t == 0.0);
    CHECK(traj.back().t == cfg.horizon);
    cfg.snapshot_stride = 10;
    traj = solve(q0, shro_all_ones(), cfg);
    CHECK(traj.snapshots.size() == 6);
    cfg.snapshot_stride = 7;
    traj = solve(q0, shro_all_ones(), cfg);
    CHECK(traj.snapshots.size() == 9);
    for (std::size_t i = 1; i < traj.snapshots.size(); ++i) CHECK(traj.snapshots[i].t > traj.snapshots[i - 1].t);
    CHECK(traj.back().t == cfg.horizon);
  }
  SUBCASE("linear unitary flow conserves every recorded norm") {
    const SpectralField q0 = gaussian_data(g, 1, 0.1, {1.0});
    cfg.snapshot_stride = 5;
    const auto traj = solve(q0, linear_system(1.0, 0.5, -1.0), cfg);
    for (const auto& s : traj.snapshots)
      for (int k = 0; k < kRecordedNormOrders; ++k)
        CHECK(std::abs(s.diagnostics.sobolev[k] / traj.front().diagnostics.sobolev[k] - 1.0) < 1e-12);
  }
  SUBCASE("parabolic linear flow is dissipative") {
    const SpectralField q0 = gaussian_data(g, 1, 0.1, {2.0});
    cfg.snapshot_stride = 5;
    cfg.eps_parabolic = 0.5;
    const auto traj = solve(q0, linear_system(1.0, 0.0, 1.0), cfg);
    for (std::size_t i = 1; i < traj.snapshots.size(); ++i)
      CHECK(traj.snapshots[i].diagnostics.sobolev[0] <= traj.snapshots[i - 1].diagnostics.sobolev[0]);
  }
  SUBCASE("negated symbol runs the linear flow backwards") {
    const auto sys = linear_system(1.0, 0.2, 1.0);
    const SpectralField q0 = gaussian_data(g, 1, 0.1, {1.0});
    const auto fwd = solve(q0, sys, cfg);
    const LinearSymbol back = LinearSymbol(sys, g, 0.0).negated();
    const auto bwd = solve(fwd.back().q, sys, cfg, back);
    CHECK(sup_diff(bwd.back().q, q0) < 1e-10);
  }
  SUBCASE("time-step self-convergence") {
    // Large enough that the coarsest differences sit well above rounding.
    const SpectralField q0 = gaussian_data(g, 1, 1.5, {2.0});
    std::vector<double> dts, errs;
    SpectralField prev(g, 1);
    for (int k = 2; k < 7; ++k) {
      cfg.dt = cfg.horizon / (10.0 * std::ldexp(1.0, k));
      const auto traj = solve(q0, shro_all_ones(), cfg);
      if (k > 2) {
        dts.push_back(2.0 * cfg.dt);
        errs.push_back(sup_diff(traj.back().q, prev));
      }
      prev = traj.back().q;
    }
    const PowerFit fit = fit_power_law(dts, errs, 1e-15);
    CHECK(fit.line.slope >= 3.7);
  }
  SUBCASE("blow-up is flagged, partial and deterministic") {
    NonlinearitySpec f(1);
    PolyExpr p;
    p.add_term(50.0, {{{0, Slot::U}, 3}});
    f.add_f2(0, p);
    const SystemSpec sys{{1.0}, {0.0}, {0.0}, f};
    SolverConfig c = cfg;
    c.enforce_stability = false;
    c.horizon = 0.1;
    c.dt = 1e-4;
    c.snapshot_stride = 10;
    // Constant data turns the flow into u' = 50 u^3, which blows up at t = 0.01.
    const auto q0 = SpectralField::from_function(g, 1, [](std::size_t, double) { return cplx{1.0, 0.0}; });
    const auto a = solve(q0, sys, c);
    const auto b = solve(q0, sys, c);
    CHECK(a.blew_up);
    CHECK(a.blowup_time > 0.0);
    CHECK(a.blowup_time >= 0.01);
    CHECK(a.blowup_time < 0.0105);
    CHECK(a.blowup_time == b.blowup_time);
    CHECK(a.back().t < a.blowup_time);
  }
  SUBCASE("configuration errors") {
    SolverConfig c = cfg;
    c.dt = 0.0;
    CHECK_THROWS_AS(solve(gaussian_data(g, 1, 0.1), shro_all_ones(), c), InvalidArgument);
    c = cfg;
    CHECK_THROWS_AS(solve(gaussian_data(Grid(8.0, 128), 1, 0.1), shro_all_ones(), c), InvalidArgument);
    CHECK_THROWS_AS(solve(gaussian_data(g, 2, 0.1), shro_all_ones(), c), InvalidArgument);
  }
}

TEST_CASE("boundedness across parabolic strengths") {
  SolverConfig cfg;
  cfg.points = 256;
  cfg.dt = 1e-3;
  cfg.horizon = 0.1;
  cfg.snapshot_stride = 10;
  const SpectralField q0 = gaussian_data(cfg.grid(), 1, 0.1);
  double base = 0.0, worst = 0.0;
  for (int p = 2; p <= 6; ++p) {
    cfg.eps_parabolic = std::ldexp(1.0, -p);
    const auto traj = solve(q0, shro_all_ones(), cfg);
    CHECK(traj.energy_window_held);
    double sup = 0.0;
    for (const auto& s : traj.snapshots) sup = std::max(sup, s.diagnostics.sobolev[4]);
    if (p == 2) base = sup;
    worst = std::max(worst, sup);
  }
  CHECK(worst <= 2.0 * base);
}

TEST_CASE("trajectory export") {
  SolverConfig cfg;
  cfg.points = 64;
  cfg.dt = 1e-3;
  cfg.horizon = 0.01;
  cfg.snapshot_stride = 5;
  const auto traj = solve(gaussian_data(cfg.grid(), 1, 0.1, {1.0}), shro_all_ones(), cfg);
  std::ostringstream csv;
  write_csv(csv, traj);
  const std::string text = csv.str();
  CHECK(text.rfind("t,H0,H1,H2,H3,H4,E\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + static_cast<long>(traj.snapshots.size()));

  std::stringstream bin;
  write_snapshots(bin, traj);
  const std::string bytes = bin.str();
  CHECK(bytes.substr(0, 8) == std::string("FDLSNAP\0", 8));
  CHECK(bytes.size() == 8 + 4 + 4 + 4 + 8 + 8 + traj.snapshots.size() * (8 + 64 * 16));
  const Trajectory back = read_snapshots(bin);
  REQUIRE(back.snapshots.size() == traj.snapshots.size());
  for (std::size_t i = 0; i < back.snapshots.size(); ++i) {
    CHECK(back.snapshots[i].t == traj.snapshots[i].t);
    CHECK(sup_diff(back.snapshots[i].q, traj.snapshots[i].q) == 0.0);
  }
  std::stringstream junk("NOTSNAP");
  CHECK_THROWS_AS(read_snapshots(junk), Error);
}
