#pragma once

// Matrix-arithmetic reference for the Grassmannian system, independent of
// the symbolic builder.

#include <algorithm>
#include <cmath>

#include "fdlab/data.hpp"
#include "fdlab/nonlinearity.hpp"
#include "oracles.hpp"

namespace oracle {

using fdlab::Rng;
using fdlab::NonlinearitySpec;
using fdlab::pack_point;

inline constexpr cplx kI{0.0, 1.0};

struct State {
  Mat q, qx, qxx;
};

/// Random k0 x c matrices for q, q_x, q_xx.
inline State random_state(Rng& rng, std::size_t rows, std::size_t cols) {
  auto m = [&] {
    Mat a = zeros(rows, cols);
    for (auto& row : a)
      for (auto& z : row) z = {rng.normal(), rng.normal()};
    return a;
  };
  return {m(), m(), m()};
}

/// Flattened (u, v, w) in the builder's component order j = j2 * rows + j1.
inline std::vector<cplx> pack(const State& s) {
  const std::size_t rows = s.q.size(), cols = s.q[0].size();
  std::vector<cplx> u(rows * cols), v(rows * cols), w(rows * cols);
  for (std::size_t j1 = 0; j1 < rows; ++j1)
    for (std::size_t j2 = 0; j2 < cols; ++j2) {
      u[j2 * rows + j1] = s.q[j1][j2];
      v[j2 * rows + j1] = s.qx[j1][j2];
      w[j2 * rows + j1] = s.qxx[j1][j2];
    }
  return pack_point(u, v, w);
}

/// Right side of the Grassmannian equation without the linear terms, with
/// both integrals replaced by the integrand at a second state `t`:
/// returns local(s) and the nonlocal part q(s) int-> M1(t) + M2(t) q(s).
struct Grassmann {
  Mat local, nonlocal;
};

inline Grassmann grassmann_oracle(const State& s, const State& t, double alpha, double beta, double gamma) {
  const Mat& q = s.q;
  const Mat& qx = s.qx;
  const Mat& qxx = s.qxx;
  const Mat qs = adj(q), qxs = adj(qx), qxxs = adj(qxx);
  const Mat qqsq = prod({q, qs, q});
  const Mat quintic = prod({q, qs, q, qs, q});
  // (q q* q)_xx by the product rule.
  Mat qqsq_xx = prod({qxx, qs, q});
  qqsq_xx = add(qqsq_xx, prod({qx, qxs, q}), 2.0);
  qqsq_xx = add(qqsq_xx, prod({qx, qs, qx}), 2.0);
  qqsq_xx = add(qqsq_xx, prod({q, qxxs, q}));
  qqsq_xx = add(qqsq_xx, prod({q, qxs, qx}), 2.0);
  qqsq_xx = add(qqsq_xx, prod({q, qs, qxx}));

  Mat f = zeros(q.size(), q[0].size());
  f = add(f, qqsq, -2.0 * kI * alpha);
  Mat bb = zeros(q.size(), q[0].size());
  bb = add(bb, prod({qxx, qs, q}), 4.0);
  bb = add(bb, prod({q, qxxs, q}), 2.0);
  bb = add(bb, prod({q, qs, qxx}), 4.0);
  bb = add(bb, prod({qx, qxs, q}), 2.0);
  bb = add(bb, prod({qx, qs, qx}), 6.0);
  bb = add(bb, prod({q, qxs, qx}), 2.0);
  bb = add(bb, quintic, 6.0);
  f = add(f, bb, kI * beta);
  const cplx c3 = -2.0 * kI * (beta + 8.0 * gamma);
  f = add(f, add(qqsq_xx, quintic, 2.0), c3);

  // (q q*)_s = q_s q* + q q*_s and (q* q)_s = q*_s q + q* q_s at the second state.
  const Mat tq = t.q, tqs = adj(t.q), tqxs = adj(t.qx);
  const Mat qqs_s = add(mul(t.qx, tqs), mul(tq, tqxs));
  const Mat qsq_s = add(mul(tqxs, tq), mul(tqs, t.qx));
  const Mat m1 = prod({tqs, qqs_s, tq});
  const Mat m2 = prod({tq, qsq_s, tqs});
  Mat nl = add(mul(q, m1), mul(m2, q));
  for (auto& row : nl)
    for (auto& z : row) z *= c3;
  return {f, nl};
}

/// Evaluates the generated spec: local part at s, nonlocal pairs as A(t) B(s).
inline Grassmann grassmann_spec(const NonlinearitySpec& f, const State& s, const State& t) {
  const std::size_t rows = s.q.size(), cols = s.q[0].size();
  const auto ps = pack(s), pt = pack(t);
  Grassmann out{zeros(rows, cols), zeros(rows, cols)};
  for (std::size_t j1 = 0; j1 < rows; ++j1)
    for (std::size_t j2 = 0; j2 < cols; ++j2) {
      const std::size_t j = j2 * rows + j1;
      out.local[j1][j2] = f.f1(j).evaluate(ps.data()) + f.f2(j).evaluate(ps.data());
      for (std::size_t r = 0; r < f.n(); ++r) {
        if (const auto& p = f.f3(j, r)) out.nonlocal[j1][j2] += p->a.evaluate(pt.data()) * p->b.evaluate(ps.data());
      }
    }
  return out;
}

inline double max_abs(const Mat& m) {
  double s = 0.0;
  for (const auto& row : m)
    for (const auto& z : row) s = std::max(s, std::abs(z));
  return s;
}

inline double max_diff(const Mat& a, const Mat& b) {
  return max_abs(add(a, b, -1.0));
}

}  // namespace oracle
