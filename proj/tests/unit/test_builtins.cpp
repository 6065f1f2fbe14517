#include <cmath>

#include "doctest.h"
#include "fdlab/data.hpp"
#include "fdlab/error.hpp"
#include "fdlab/nonlinearity.hpp"
#include "fdlab/spectral.hpp"
#include "fdlab/system.hpp"
#include "grassmannian_oracle.hpp"
#include "oracles.hpp"

using namespace fdlab;
using oracle::Mat;
using oracle::State;
using oracle::Grassmann;
using oracle::grassmann_oracle;
using oracle::grassmann_spec;
using oracle::random_state;
using oracle::max_abs;
using oracle::max_diff;
using oracle::pack;

namespace {

constexpr cplx I{0.0, 1.0};

}  // namespace

TEST_CASE("4shro builder") {
  const auto sys = builtin_4shro(2.0, {1, 2, 3, 4, 5, 6});
  CHECK(sys.a == std::vector<double>{2.0});
  CHECK(sys.b == std::vector<double>{0.0});
  CHECK(sys.lambda == std::vector<double>{1.0});
  CHECK_FALSE(sys.nonlinearity.has_nonlocal());
  const VarTag u{0, Slot::U}, ub{0, Slot::UBar}, v{0, Slot::V}, vb{0, Slot::VBar}, w{0, Slot::W},
      wb{0, Slot::WBar};
  PolyExpr f1, f2;
  f1.add_term(5.0, {{u, 2}, {wb, 1}});
  f1.add_term(6.0, {{u, 1}, {ub, 1}, {w, 1}});
  f2.add_term(1.0, {{u, 2}, {ub, 1}});
  f2.add_term(2.0, {{u, 3}, {ub, 2}});
  f2.add_term(3.0, {{v, 2}, {ub, 1}});
  f2.add_term(4.0, {{u, 1}, {v, 1}, {vb, 1}});
  CHECK(sys.nonlinearity.f1(0) == f1);
  CHECK(sys.nonlinearity.f2(0) == f2);
  CHECK(validate_structure(sys.nonlinearity).all_accepted());
  CHECK_THROWS_AS(builtin_4shro(0.0, {1, 1, 1, 1, 1, 1}), InvalidArgument);
}

TEST_CASE("WZY builder") {
  SUBCASE("single component gamma block") {
    // alpha = eps = 0, gamma = 1/2: q(q_x* q)_x + q_x q_x* q + 2(q_xx q* q + q q* q_xx)
    // + 3(q_x q* q_x + q (q* q)^2) collapses to
    // u^2 w* + 4 |u|^2 w + 2 u |v|^2 + 3 v^2 u* + 3 |u|^4 u.
    const auto sys = builtin_wzy(0.0, 0.0, 0.5, 1);
    CHECK(sys.a == std::vector<double>{0.25});
    const VarTag u{0, Slot::U}, ub{0, Slot::UBar}, v{0, Slot::V}, vb{0, Slot::VBar}, w{0, Slot::W},
        wb{0, Slot::WBar};
    const cplx ig = 0.5 * I;
    PolyExpr f1, f2;
    f1.add_term(ig, {{u, 2}, {wb, 1}});
    f1.add_term(4.0 * ig, {{u, 1}, {ub, 1}, {w, 1}});
    f2.add_term(2.0 * ig, {{u, 1}, {v, 1}, {vb, 1}});
    f2.add_term(3.0 * ig, {{v, 2}, {ub, 1}});
    f2.add_term(3.0 * ig, {{u, 3}, {ub, 2}});
    CHECK(sys.nonlinearity.f1(0) == f1);
    CHECK(sys.nonlinearity.f2(0) == f2);
  }
  SUBCASE("dispersion and lower-order terms") {
    const auto sys = builtin_wzy(0.6, 0.4, 2.0, 1);
    CHECK(sys.a[0] == 1.0);
    CHECK(sys.b[0] == -0.2);
    CHECK(sys.lambda[0] == 0.3);
    const VarTag u{0, Slot::U}, ub{0, Slot::UBar}, v{0, Slot::V};
    const auto terms = sys.nonlinearity.f2(0).terms();
    CHECK(terms.at({{u, 2}, {ub, 1}}) == 0.6 * I);
    CHECK(terms.at({{u, 1}, {ub, 1}, {v, 1}}) == cplx{-3.0 * 0.4, 0.0});
  }
  SUBCASE("multi-component expansion matches vector arithmetic") {
    const double alpha = 0.7, eps = -0.3, gamma = 1.1;
    const auto sys = builtin_wzy(alpha, eps, gamma, 3);
    CHECK(validate_structure(sys.nonlinearity).all_accepted());
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const State s = random_state(rng, 3, 1);
      using namespace oracle;
      const Mat &q = s.q, &qx = s.qx, &qxx = s.qxx;
      const Mat qs = adj(q), qxs = adj(qx), qxxs = adj(qxx);
      Mat f = prod({q, qs, q});
      for (auto& row : f) row[0] *= I * alpha;
      f = add(f, add(prod({qx, qs, q}), prod({q, qs, qx})), -1.5 * eps);
      Mat g = mul(q, add(mul(qxxs, q), mul(qxs, qx)));
      g = add(g, prod({qx, qxs, q}));
      g = add(g, add(prod({qxx, qs, q}), prod({q, qs, qxx})), 2.0);
      g = add(g, add(prod({qx, qs, qx}), prod({q, qs, q, qs, q})), 3.0);
      f = add(f, g, I * gamma);
      const auto pt = pack(s);
      for (std::size_t j = 0; j < 3; ++j) {
        const cplx got = sys.nonlinearity.f1(j).evaluate(pt.data()) + sys.nonlinearity.f2(j).evaluate(pt.data());
        CHECK(std::abs(got - f[j][0]) <= 1e-10 * max_abs(f));
      }
    }
  }
  CHECK_THROWS_AS(builtin_wzy(1.0, 1.0, 0.0, 1), InvalidArgument);
}

TEST_CASE("Grassmannian builder against matrix arithmetic") {
  const double alpha = 0.4, beta = 1.3, gamma = -0.2;
  for (auto [k0, n0] : {std::pair{1, 3}, std::pair{2, 4}, std::pair{2, 3}}) {
    CAPTURE(k0);
    CAPTURE(n0);
    const auto sys = builtin_grassmannian(alpha, beta, gamma, k0, n0);
    const std::size_t rows = k0, cols = n0 - k0;
    REQUIRE(sys.n() == rows * cols);
    CHECK(sys.a == std::vector<double>(rows * cols, beta));
    CHECK(sys.lambda == std::vector<double>(rows * cols, -alpha));
    CHECK(sys.nonlinearity.has_nonlocal());
    CHECK(validate_structure(sys.nonlinearity).all_accepted());
    Rng rng(100 + k0 * 10 + n0);
    for (int trial = 0; trial < 20; ++trial) {
      const State s = random_state(rng, rows, cols), t = random_state(rng, rows, cols);
      const Grassmann want = grassmann_oracle(s, t, alpha, beta, gamma);
      const Grassmann got = grassmann_spec(sys.nonlinearity, s, t);
      CHECK(max_diff(got.local, want.local) <= 1e-10 * max_abs(want.local));
      CHECK(max_diff(got.nonlocal, want.nonlocal) <= 1e-10 * max_abs(want.nonlocal));
    }
  }
  CHECK_THROWS_AS(builtin_grassmannian(1.0, 0.0, 1.0, 1, 3), InvalidArgument);
  CHECK_THROWS_AS(builtin_grassmannian(1.0, 1.0, 1.0, 3, 3), InvalidArgument);
  CHECK_THROWS_AS(builtin_grassmannian(1.0, 1.0, 1.0, 0, 3), InvalidArgument);
}

TEST_CASE("Grassmannian evaluation on fields uses the cumulative integral") {
  const double alpha = 0.4, beta = 1.3, gamma = -0.2;
  const auto sys = builtin_grassmannian(alpha, beta, gamma, 1, 3);
  const Grid g(12.0, 256);
  Rng rng(5);
  const SpectralField q = random_perturbation(g, 2, 0, rng);
  const SpectralField qx = fourier_derivative(q, 1), qxx = fourier_derivative(q, 2);
  EvaluateOptions opts;
  opts.dealias = false;
  const SpectralField f = evaluate(sys.nonlinearity, q, qx, qxx, opts);

  // Matrix oracle with an independent running trapezoid of M1 and M2.
  auto state_at = [&](std::size_t i) {
    State s{oracle::zeros(1, 2), oracle::zeros(1, 2), oracle::zeros(1, 2)};
    for (std::size_t c = 0; c < 2; ++c) {
      s.q[0][c] = q(c, i);
      s.qx[0][c] = qx(c, i);
      s.qxx[0][c] = qxx(c, i);
    }
    return s;
  };
  const cplx c3 = -2.0 * I * (beta + 8.0 * gamma);
  auto integrands = [&](const State& s) {
    using namespace oracle;
    const Mat qs = adj(s.q), qxs = adj(s.qx);
    const Mat m1 = prod({qs, add(mul(s.qx, qs), mul(s.q, qxs)), s.q});
    const Mat m2 = prod({s.q, add(mul(qxs, s.q), mul(qs, s.qx)), qs});
    return std::pair{m1, m2};
  };
  Mat int1 = oracle::zeros(2, 2), int2 = oracle::zeros(1, 1);
  auto prev = integrands(state_at(0));
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < g.points(); ++i) {
    const State s = state_at(i);
    const auto cur = integrands(s);
    if (i > 0) {
      int1 = oracle::add(int1, oracle::add(prev.first, cur.first), 0.5 * g.dx());
      int2 = oracle::add(int2, oracle::add(prev.second, cur.second), 0.5 * g.dx());
    }
    prev = cur;
    const Grassmann local = grassmann_oracle(s, s, alpha, beta, gamma);
    Mat want = oracle::add(local.local, oracle::add(oracle::mul(s.q, int1), oracle::mul(int2, s.q)), c3);
    for (std::size_t c = 0; c < 2; ++c) {
      err = std::max(err, std::abs(f(c, i) - want[0][c]));
      scale = std::max(scale, std::abs(want[0][c]));
    }
  }
  CHECK(err <= 1e-10 * scale);
}
