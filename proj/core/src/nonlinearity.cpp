#include "fdlab/nonlinearity.hpp"

#include <algorithm>
#include <cmath>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

void check_poly(Target t, const PolyExpr& p, std::size_t n, const std::string& where) {
  for (const auto& [e, c] : p.terms()) {
    if (e.empty()) throw InvalidArgument(where + ": constant terms are not allowed");
    for (const auto& [tag, pw] : e) {
      if (tag.component < 0 || static_cast<std::size_t>(tag.component) >= n) {
        throw InvalidArgument(where + ": component index " + std::to_string(tag.component + 1) +
                              " out of range 1.." + std::to_string(n));
      }
      if (!slot_allowed(t, tag.slot)) {
        throw InvalidArgument(where + ": slot " + slot_name(tag.slot) + " is forbidden here");
      }
    }
  }
}

double coefficient_sum(const PolyExpr& p) {
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) s += std::abs(c);
  return s;
}

}  // namespace

bool slot_allowed(Target t, Slot s) {
  const int order = derivative_order(s);
  switch (t) {
    case Target::F1: return order != 1;
    case Target::F2: return order != 2;
    case Target::F3A: return order != 2;
    case Target::F3B: return order == 0;
  }
  return false;
}

std::string target_name(Target t, std::size_t j, std::size_t r) {
  const std::string js = std::to_string(j + 1);
  switch (t) {
    case Target::F1: return "F1[" + js + "]";
    case Target::F2: return "F2[" + js + "]";
    case Target::F3A: return "F3A[" + js + "," + std::to_string(r + 1) + "]";
    case Target::F3B: return "F3B[" + js + "," + std::to_string(r + 1) + "]";
  }
  return {};
}

NonlinearitySpec::NonlinearitySpec(std::size_t n) : n_(n), f1_(n), f2_(n), f3_(n * n) {
  if (n == 0) throw InvalidArgument("component count must be at least 1");
}

void NonlinearitySpec::add_f1(std::size_t j, const PolyExpr& p) {
  check_poly(Target::F1, p, n_, target_name(Target::F1, j));
  f1_.at(j) += p;
}

void NonlinearitySpec::add_f2(std::size_t j, const PolyExpr& p) {
  check_poly(Target::F2, p, n_, target_name(Target::F2, j));
  f2_.at(j) += p;
}

void NonlinearitySpec::add_f3a(std::size_t j, std::size_t r, const PolyExpr& p) {
  check_poly(Target::F3A, p, n_, target_name(Target::F3A, j, r));
  auto& slot = f3_.at(j * n_ + r);
  if (!slot) slot.emplace();
  slot->a += p;
}

void NonlinearitySpec::add_f3b(std::size_t j, std::size_t r, const PolyExpr& p) {
  check_poly(Target::F3B, p, n_, target_name(Target::F3B, j, r));
  auto& slot = f3_.at(j * n_ + r);
  if (!slot) slot.emplace();
  slot->b += p;
}

bool NonlinearitySpec::has_nonlocal() const {
  return std::any_of(f3_.begin(), f3_.end(), [](const auto& p) {
    return p && !p->a.empty() && !p->b.empty();
  });
}

Degrees NonlinearitySpec::degrees() const {
  Degrees d;
  for (std::size_t j = 0; j < n_; ++j) {
    for (const auto& m : f2_[j].monomials()) {
      d.d1 = std::max(d.d1, m.degree_in(0) - 1);
      d.d2 = std::max(d.d2, m.degree_in(1));
    }
  }
  for (const auto& pair : f3_) {
    if (!pair) continue;
    for (const auto& m : pair->a.monomials()) {
      const int total = m.degree();
      if (m.degree_in(0) > 0) d.d3 = std::max(d.d3, total - 2);
      if (m.degree_in(1) > 0) d.d4 = std::max(d.d4, total - 2);
    }
    for (const auto& m : pair->b.monomials()) d.d5 = std::max(d.d5, m.degree() - 1);
  }
  return d;
}

bool ValidationReport::all_accepted() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.accepted; });
}

ValidationReport validate_structure(const NonlinearitySpec& spec) {
  const std::size_t n = spec.n();
  ValidationReport rep;
  rep.c1.assign(n, 0.0);
  rep.c2.assign(n, 0.0);
  rep.c3.assign(n, std::vector<double>(n, 0.0));
  rep.amgm_mixed.assign(n, std::vector<int>(n, 0));
  rep.degrees = spec.degrees();

  auto reject = [](ExpressionVerdict& v, const Monomial& m, std::string why) {
    v.accepted = false;
    v.offending.push_back(m);
    v.reasons.push_back(std::move(why));
  };

  for (std::size_t j = 0; j < n; ++j) {
    // (F1): |F1| <= c |u|^2 |w| for all u, w forces exactly one w factor and
    // exactly two u factors per monomial.
    ExpressionVerdict v1;
    v1.target = target_name(Target::F1, j);
    for (const auto& m : spec.f1(j).monomials()) {
      const int du = m.degree_in(0), dw = m.degree_in(2);
      if (dw != 1) {
        reject(v1, m, "w-degree " + std::to_string(dw) + " (need exactly 1)");
      } else if (du != 2) {
        reject(v1, m, "u-degree " + std::to_string(du) + " (need exactly 2)");
      }
    }
    rep.c1[j] = coefficient_sum(spec.f1(j));
    rep.verdicts.push_back(std::move(v1));

    ExpressionVerdict v2;
    v2.target = target_name(Target::F2, j);
    for (const auto& m : spec.f2(j).monomials()) {
      if (m.degree_in(0) < 1) reject(v2, m, "u-degree 0 (need at least 1)");
    }
    rep.c2[j] = coefficient_sum(spec.f2(j));
    rep.verdicts.push_back(std::move(v2));

    for (std::size_t r = 0; r < n; ++r) {
      const auto& pair = spec.f3(j, r);
      if (!pair) continue;
      ExpressionVerdict va;
      va.target = target_name(Target::F3A, j, r);
      for (const auto& m : pair->a.monomials()) {
        if (m.degree() < 2) {
          reject(va, m, "total degree " + std::to_string(m.degree()) + " (need at least 2)");
        } else if (m.degree_in(0) > 0 && m.degree_in(1) > 0) {
          ++rep.amgm_mixed[j][r];
        }
      }
      ExpressionVerdict vb;
      vb.target = target_name(Target::F3B, j, r);
      for (const auto& m : pair->b.monomials()) {
        if (m.degree() < 1) reject(vb, m, "total degree 0 (need at least 1)");
      }
      if (pair->a.empty() != pair->b.empty()) {
        // A half-specified pair contributes nothing; flag it so it is not silently dropped.
        auto& v = pair->a.empty() ? va : vb;
        v.accepted = false;
        v.reasons.push_back("nonlocal pair is missing its partner expression");
      }
      rep.c3[j][r] = std::max(coefficient_sum(pair->a), coefficient_sum(pair->b));
      rep.verdicts.push_back(std::move(va));
      rep.verdicts.push_back(std::move(vb));
    }
  }
  return rep;
}

std::vector<cplx> pack_point(std::span<const cplx> u, std::span<const cplx> v,
                             std::span<const cplx> w) {
  const std::size_t n = u.size();
  std::vector<cplx> out(kSlotCount * n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx* p = out.data() + kSlotCount * k;
    p[0] = u[k];
    p[1] = std::conj(u[k]);
    p[2] = v.empty() ? cplx{} : v[k];
    p[3] = std::conj(p[2]);
    p[4] = w.empty() ? cplx{} : w[k];
    p[5] = std::conj(p[4]);
  }
  return out;
}

NonlinearityEvaluator::NonlinearityEvaluator(const NonlinearitySpec& spec) : n_(spec.n()) {
  for (std::size_t j = 0; j < n_; ++j) local_.emplace_back(spec.f1(j) + spec.f2(j));
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t r = 0; r < n_; ++r) {
      const auto& pair = spec.f3(j, r);
      if (pair && !pair->a.empty() && !pair->b.empty()) {
        nonlocal_.push_back({j, r, CompiledPoly(pair->a), CompiledPoly(pair->b)});
      }
    }
  }
}

SpectralField NonlinearityEvaluator::operator()(const SpectralField& q, const SpectralField& qx,
                                                const SpectralField& qxx,
                                                const EvaluateOptions& options,
                                                std::vector<DecayWarning>* warnings) const {
  if (!q.same_shape(qx) || !q.same_shape(qxx)) {
    throw InvalidArgument("evaluate: Q, Qx, Qxx must share grid and component count");
  }
  if (q.components() != n_) {
    throw InvalidArgument("evaluate: field has " + std::to_string(q.components()) +
                          " components, nonlinearity expects " + std::to_string(n_));
  }
  const Grid& g = q.grid();
  const std::size_t npts = g.points();
  SpectralField out(g, n_);

  // Pointwise variable table, 6n entries per grid point.
  std::vector<cplx> table(kSlotCount * n_ * npts);
  for (std::size_t i = 0; i < npts; ++i) {
    cplx* p = table.data() + kSlotCount * n_ * i;
    for (std::size_t k = 0; k < n_; ++k) {
      p[6 * k + 0] = q(k, i);
      p[6 * k + 1] = std::conj(q(k, i));
      p[6 * k + 2] = qx(k, i);
      p[6 * k + 3] = std::conj(qx(k, i));
      p[6 * k + 4] = qxx(k, i);
      p[6 * k + 5] = std::conj(qxx(k, i));
    }
  }
  auto point = [&](std::size_t i) { return table.data() + kSlotCount * n_ * i; };

  for (std::size_t j = 0; j < n_; ++j) {
    if (local_[j].empty()) continue;
    for (std::size_t i = 0; i < npts; ++i) out(j, i) += local_[j](point(i));
  }

  if (!nonlocal_.empty()) {
    SpectralField integrand(g, 1);
    for (const auto& pair : nonlocal_) {
      for (std::size_t i = 0; i < npts; ++i) integrand(0, i) = pair.a(point(i));
      auto integral = cumulative_integral(integrand, options.decay_tol);
      if (warnings) {
        for (auto w : integral.warnings) {
          w.component = pair.j;
          warnings->push_back(w);
        }
      }
      for (std::size_t i = 0; i < npts; ++i) {
        out(pair.j, i) += integral.field(0, i) * pair.b(point(i));
      }
    }
  }
  return options.dealias ? dealias(out) : out;
}

SpectralField evaluate(const NonlinearitySpec& spec, const SpectralField& q,
                       const SpectralField& qx, const SpectralField& qxx,
                       const EvaluateOptions& options, std::vector<DecayWarning>* warnings) {
  return NonlinearityEvaluator(spec)(q, qx, qxx, options, warnings);
}

}  // namespace fdlab
