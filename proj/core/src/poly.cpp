#include "fdlab/poly.hpp"

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

cplx int_pow(cplx z, int p) {
  cplx r{1.0, 0.0};
  while (p > 0) {
    if (p & 1) r *= z;
    z *= z;
    p >>= 1;
  }
  return r;
}

int slot_index(const VarTag& t) { return kSlotCount * t.component + static_cast<int>(t.slot); }

}  // namespace

std::string slot_name(Slot s) {
  static const char* names[] = {"u", "conj(u)", "v", "conj(v)", "w", "conj(w)"};
  return names[static_cast<int>(s)];
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [tag, e] : exponents) d += e;
  return d;
}

int Monomial::degree_in(int order) const {
  int d = 0;
  for (const auto& [tag, e] : exponents) {
    if (derivative_order(tag.slot) == order) d += e;
  }
  return d;
}

PolyExpr PolyExpr::variable(VarTag tag) {
  PolyExpr p;
  p.terms_[Exponents{{tag, 1}}] = 1.0;
  return p;
}

PolyExpr PolyExpr::constant(cplx c) {
  PolyExpr p;
  if (c != cplx{}) p.terms_[Exponents{}] = c;
  return p;
}

void PolyExpr::add_term(cplx coefficient, const Exponents& exponents) {
  for (const auto& [tag, e] : exponents) {
    if (e <= 0) throw InvalidArgument("monomial exponents must be positive");
  }
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (!inserted) it->second += coefficient;
  if (it->second == cplx{}) terms_.erase(it);
}

std::vector<Monomial> PolyExpr::monomials() const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.push_back({c, e});
  return out;
}

PolyExpr& PolyExpr::operator+=(const PolyExpr& o) {
  for (const auto& [e, c] : o.terms_) add_term(c, e);
  return *this;
}

PolyExpr& PolyExpr::operator-=(const PolyExpr& o) {
  for (const auto& [e, c] : o.terms_) add_term(-c, e);
  return *this;
}

PolyExpr& PolyExpr::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

PolyExpr operator*(const PolyExpr& a, const PolyExpr& b) {
  PolyExpr out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e = ea;
      for (const auto& [tag, p] : eb) e[tag] += p;
      out.add_term(ca * cb, e);
    }
  }
  return out;
}

PolyExpr PolyExpr::conj() const {
  PolyExpr out;
  for (const auto& [e, c] : terms_) {
    Exponents ce;
    for (const auto& [tag, p] : e) ce[{tag.component, conjugate(tag.slot)}] = p;
    out.add_term(std::conj(c), ce);
  }
  return out;
}

PolyExpr PolyExpr::derivative() const {
  PolyExpr out;
  for (const auto& [e, c] : terms_) {
    for (const auto& [tag, p] : e) {
      if (derivative_order(tag.slot) == 2) {
        throw InvalidArgument("derivative would introduce a third-order variable");
      }
      Exponents d = e;
      if (--d[tag] == 0) d.erase(tag);
      const Slot next = static_cast<Slot>(static_cast<int>(tag.slot) + 2);
      d[{tag.component, next}] += 1;
      out.add_term(c * static_cast<double>(p), d);
    }
  }
  return out;
}

cplx PolyExpr::evaluate(const cplx* values) const {
  cplx sum{};
  for (const auto& [e, c] : terms_) {
    cplx term = c;
    for (const auto& [tag, p] : e) term *= int_pow(values[slot_index(tag)], p);
    sum += term;
  }
  return sum;
}

CompiledPoly::CompiledPoly(const PolyExpr& p) {
  for (const auto& [e, c] : p.terms()) {
    Term t{c, {}};
    for (const auto& [tag, pw] : e) t.factors.push_back({slot_index(tag), pw});
    terms_.push_back(std::move(t));
  }
}

cplx CompiledPoly::operator()(const cplx* values) const {
  cplx sum{};
  for (const auto& t : terms_) {
    cplx term = t.coefficient;
    for (const auto& f : t.factors) {
      const cplx z = values[f.index];
      switch (f.power) {
        case 1: term *= z; break;
        case 2: term *= z * z; break;
        default: term *= int_pow(z, f.power); break;
      }
    }
    sum += term;
  }
  return sum;
}

}  // namespace fdlab
