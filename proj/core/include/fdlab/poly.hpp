#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fdlab {

using cplx = std::complex<double>;

/// Which argument of the nonlinearity a variable refers to: u = Q,
/// v = dQ/dx, w = d^2Q/dx^2, and their complex conjugates.
enum class Slot : std::uint8_t { U = 0, UBar, V, VBar, W, WBar };

inline constexpr int kSlotCount = 6;

constexpr bool is_conjugate(Slot s) { return (static_cast<int>(s) & 1) != 0; }
constexpr Slot conjugate(Slot s) { return static_cast<Slot>(static_cast<int>(s) ^ 1); }
/// 0 for u, 1 for v, 2 for w.
constexpr int derivative_order(Slot s) { return static_cast<int>(s) / 2; }

/// One variable: component index (0-based) and slot.
struct VarTag {
  int component = 0;
  Slot slot = Slot::U;
  auto operator<=>(const VarTag&) const = default;
};

using Exponents = std::map<VarTag, int>;

struct Monomial {
  cplx coefficient;
  Exponents exponents;

  int degree() const;
  /// Sum of exponents over variables whose slot has the given derivative order.
  int degree_in(int order) const;
};

/// Polynomial in the tagged variables, kept canonical: one entry per
/// exponent map, no zero coefficients, ordered by exponent map.
class PolyExpr {
 public:
  PolyExpr() = default;

  static PolyExpr variable(VarTag tag);
  static PolyExpr constant(cplx c);

  void add_term(cplx coefficient, const Exponents& exponents);

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::vector<Monomial> monomials() const;
  const std::map<Exponents, cplx>& terms() const { return terms_; }

  PolyExpr& operator+=(const PolyExpr& o);
  PolyExpr& operator-=(const PolyExpr& o);
  PolyExpr& operator*=(cplx s);
  friend PolyExpr operator+(PolyExpr a, const PolyExpr& b) { return a += b; }
  friend PolyExpr operator-(PolyExpr a, const PolyExpr& b) { return a -= b; }
  friend PolyExpr operator*(cplx s, PolyExpr a) { return a *= s; }
  friend PolyExpr operator*(const PolyExpr& a, const PolyExpr& b);

  /// Complex conjugate: conjugates coefficients and swaps every slot with
  /// its conjugate partner.
  PolyExpr conj() const;

  /// d/dx by the chain rule with u' = v, v' = w. Throws if a w variable
  /// would need differentiating.
  PolyExpr derivative() const;

  /// Evaluates at one point. `values[6*component + slot]` holds each
  /// variable's value.
  cplx evaluate(const cplx* values) const;

  friend bool operator==(const PolyExpr&, const PolyExpr&) = default;

 private:
  std::map<Exponents, cplx> terms_;
};

/// Dense evaluation form of a PolyExpr, for inner loops over grid points.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const PolyExpr& p);

  bool empty() const { return terms_.empty(); }
  cplx operator()(const cplx* values) const;

 private:
  struct Factor {
    int index;
    int power;
  };
  struct Term {
    cplx coefficient;
    std::vector<Factor> factors;
  };
  std::vector<Term> terms_;
};

std::string slot_name(Slot s);

}  // namespace fdlab
