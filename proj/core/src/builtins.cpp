#include "fdlab/system.hpp"

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

constexpr cplx I{0.0, 1.0};

/// Dense matrix with polynomial entries, for expanding matrix nonlinearities.
class SymMatrix {
 public:
  SymMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  PolyExpr& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const PolyExpr& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  SymMatrix adjoint() const {
    SymMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j).conj();
    return out;
  }

  SymMatrix derivative() const {
    SymMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].derivative();
    return out;
  }

  SymMatrix& operator+=(const SymMatrix& o) {
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }

  friend SymMatrix operator*(const SymMatrix& a, const SymMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("symbolic matrix shape mismatch");
    SymMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j)
        for (std::size_t k = 0; k < a.cols_; ++k) out(i, j) += a(i, k) * b(k, j);
    return out;
  }

  friend SymMatrix operator*(cplx s, SymMatrix m) {
    for (auto& p : m.e_) p *= s;
    return m;
  }

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }

 private:
  std::size_t rows_, cols_;
  std::vector<PolyExpr> e_;
};

/// Routes each monomial of a local term to F1 (contains a w factor) or F2.
void add_local(NonlinearitySpec& spec, std::size_t j, const PolyExpr& p) {
  PolyExpr f1, f2;
  for (const auto& m : p.monomials()) {
    (m.degree_in(2) > 0 ? f1 : f2).add_term(m.coefficient, m.exponents);
  }
  if (!f1.empty()) spec.add_f1(j, f1);
  if (!f2.empty()) spec.add_f2(j, f2);
}

PolyExpr var(int component, Slot s) { return PolyExpr::variable({component, s}); }

}  // namespace

void SystemSpec::check() const {
  const std::size_t n = nonlinearity.n();
  if (a.size() != n || b.size() != n || lambda.size() != n) {
    throw InvalidArgument("dispersion vectors must have one entry per component");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j] == 0.0) throw InvalidArgument("a_" + std::to_string(j + 1) + " must be nonzero");
  }
}

SystemSpec SystemSpec::linear_part() const {
  return SystemSpec{a, b, lambda, NonlinearitySpec(n())};
}

SystemSpec builtin_4shro(double nu, const std::array<double, 6>& mu) {
  if (nu == 0.0) throw InvalidArgument("4shro: nu must be nonzero");
  NonlinearitySpec f(1);
  auto term = [](double c, Exponents e) {
    PolyExpr p;
    if (c != 0.0) p.add_term(c, e);
    return p;
  };
  const VarTag u{0, Slot::U}, ub{0, Slot::UBar}, v{0, Slot::V}, vb{0, Slot::VBar},
      w{0, Slot::W}, wb{0, Slot::WBar};
  f.add_f2(0, term(mu[0], {{u, 2}, {ub, 1}}));
  f.add_f2(0, term(mu[1], {{u, 3}, {ub, 2}}));
  f.add_f2(0, term(mu[2], {{v, 2}, {ub, 1}}));
  f.add_f2(0, term(mu[3], {{u, 1}, {v, 1}, {vb, 1}}));
  f.add_f1(0, term(mu[4], {{u, 2}, {wb, 1}}));
  f.add_f1(0, term(mu[5], {{u, 1}, {ub, 1}, {w, 1}}));
  return SystemSpec{{nu}, {0.0}, {1.0}, std::move(f)};
}

SystemSpec builtin_wzy(double alpha, double eps, double gamma, std::size_t n) {
  if (gamma == 0.0) throw InvalidArgument("wzy: gamma must be nonzero");
  if (n == 0) throw InvalidArgument("wzy: n must be at least 1");
  SymMatrix q(n, 1), qx(n, 1), qxx(n, 1);
  for (std::size_t j = 0; j < n; ++j) {
    const int c = static_cast<int>(j);
    q(j, 0) = var(c, Slot::U);
    qx(j, 0) = var(c, Slot::V);
    qxx(j, 0) = var(c, Slot::W);
  }
  const SymMatrix qs = q.adjoint(), qxs = qx.adjoint();
  const SymMatrix qqs_q = q * qs * q;

  SymMatrix rhs = (I * alpha) * qqs_q;
  rhs += (-1.5 * eps) * (qx * qs * q + q * qs * qx);
  SymMatrix bracket = q * (qxs * q).derivative();
  bracket += qx * qxs * q;
  bracket += 2.0 * (qxx * qs * q + q * qs * qxx);
  bracket += 3.0 * (qx * qs * qx + q * qs * q * qs * q);
  rhs += (I * gamma) * bracket;

  NonlinearitySpec f(n);
  for (std::size_t j = 0; j < n; ++j) add_local(f, j, rhs(j, 0));
  return SystemSpec{std::vector<double>(n, 0.5 * gamma), std::vector<double>(n, -0.5 * eps),
                    std::vector<double>(n, 0.5 * alpha), std::move(f)};
}

SystemSpec builtin_grassmannian(double alpha, double beta, double gamma, int k0, int n0) {
  if (beta == 0.0) throw InvalidArgument("grassmannian: beta must be nonzero");
  if (k0 < 1 || k0 >= n0) throw InvalidArgument("grassmannian: need 1 <= k0 < n0");
  const auto rows = static_cast<std::size_t>(k0);
  const auto cols = static_cast<std::size_t>(n0 - k0);
  const std::size_t n = rows * cols;
  auto flat = [rows](std::size_t j1, std::size_t j2) { return j2 * rows + j1; };

  SymMatrix q(rows, cols), qx(rows, cols), qxx(rows, cols);
  for (std::size_t j1 = 0; j1 < rows; ++j1) {
    for (std::size_t j2 = 0; j2 < cols; ++j2) {
      const int c = static_cast<int>(flat(j1, j2));
      q(j1, j2) = var(c, Slot::U);
      qx(j1, j2) = var(c, Slot::V);
      qxx(j1, j2) = var(c, Slot::W);
    }
  }
  const SymMatrix qs = q.adjoint(), qxs = qx.adjoint(), qxxs = qxx.adjoint();
  const SymMatrix qqs_q = q * qs * q;
  const SymMatrix quintic = q * qs * q * qs * q;

  SymMatrix rhs = (-2.0 * I * alpha) * qqs_q;
  SymMatrix beta_block = 4.0 * (qxx * qs * q);
  beta_block += 2.0 * (q * qxxs * q);
  beta_block += 4.0 * (q * qs * qxx);
  beta_block += 2.0 * (qx * qxs * q);
  beta_block += 6.0 * (qx * qs * qx);
  beta_block += 2.0 * (q * qxs * qx);
  beta_block += 6.0 * quintic;
  rhs += (I * beta) * beta_block;

  const cplx c3 = -2.0 * I * (beta + 8.0 * gamma);
  SymMatrix gamma_block = qqs_q.derivative().derivative();
  gamma_block += 2.0 * quintic;
  rhs += c3 * gamma_block;

  NonlinearitySpec f(n);
  for (std::size_t j1 = 0; j1 < rows; ++j1)
    for (std::size_t j2 = 0; j2 < cols; ++j2) add_local(f, flat(j1, j2), rhs(j1, j2));

  // q (int q* (q q*)_s q ds): entry (j1, j2) = sum_l q(j1, l) * int M1(l, j2).
  const SymMatrix m1 = qs * (q * qs).derivative() * q;
  // (int q (q* q)_s q* ds) q: entry (j1, j2) = sum_p int M2(j1, p) * q(p, j2).
  const SymMatrix m2 = q * (qs * q).derivative() * qs;
  for (std::size_t j1 = 0; j1 < rows; ++j1) {
    for (std::size_t j2 = 0; j2 < cols; ++j2) {
      const std::size_t j = flat(j1, j2);
      for (std::size_t l = 0; l < cols; ++l) {
        const std::size_t r = flat(j1, l);
        f.add_f3a(j, r, c3 * m1(l, j2));
      }
      for (std::size_t p = 0; p < rows; ++p) {
        const std::size_t r = flat(p, j2);
        f.add_f3a(j, r, c3 * m2(j1, p));
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      if (f.f3(j, r)) f.add_f3b(j, r, var(static_cast<int>(r), Slot::U));
    }
  }
  return SystemSpec{std::vector<double>(n, beta), std::vector<double>(n, 0.0),
                    std::vector<double>(n, -alpha), std::move(f)};
}

}  // namespace fdlab
