#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fdlab/field.hpp"
#include "fdlab/poly.hpp"
#include "fdlab/spectral.hpp"

namespace fdlab {

/// One nonlocal contribution (int_{-inf}^x A dy) * B to F_j from source r.
struct NonlocalPair {
  PolyExpr a;  ///< in u, conj(u), v, conj(v)
  PolyExpr b;  ///< in u, conj(u)
  friend bool operator==(const NonlocalPair&, const NonlocalPair&) = default;
};

/// Excess degrees d1..d5 appearing in the growth bounds of F2 and F3.
struct Degrees {
  int d1 = 0, d2 = 0, d3 = 0, d4 = 0, d5 = 0;
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

/// The nonlinearity F = F1 + F2 + F3 of an n-component system.
///
/// Component indices are 0-based in the API; the DSL and printed targets
/// use 1-based indices.
class NonlinearitySpec {
 public:
  explicit NonlinearitySpec(std::size_t n);

  std::size_t n() const { return n_; }

  const PolyExpr& f1(std::size_t j) const { return f1_.at(j); }
  const PolyExpr& f2(std::size_t j) const { return f2_.at(j); }
  const std::optional<NonlocalPair>& f3(std::size_t j, std::size_t r) const {
    return f3_.at(j * n_ + r);
  }

  /// Adds to the named sub-expression after checking slot restrictions and
  /// component ranges. Throws InvalidArgument on violation.
  void add_f1(std::size_t j, const PolyExpr& p);
  void add_f2(std::size_t j, const PolyExpr& p);
  void add_f3a(std::size_t j, std::size_t r, const PolyExpr& p);
  void add_f3b(std::size_t j, std::size_t r, const PolyExpr& p);

  bool has_nonlocal() const;

  /// Derived from the expression trees; see Degrees.
  Degrees degrees() const;

  friend bool operator==(const NonlinearitySpec&, const NonlinearitySpec&) = default;

 private:
  std::size_t n_;
  std::vector<PolyExpr> f1_, f2_;
  std::vector<std::optional<NonlocalPair>> f3_;
};

/// Slots admissible in each kind of sub-expression.
enum class Target { F1, F2, F3A, F3B };
bool slot_allowed(Target t, Slot s);
std::string target_name(Target t, std::size_t j, std::size_t r = 0);

struct ExpressionVerdict {
  std::string target;  ///< e.g. "F1[1]" or "F3A[2,1]"
  bool accepted = true;
  std::vector<Monomial> offending;
  std::vector<std::string> reasons;
};

/// Structural check of (F1)-(F3) plus the bound constants it certifies.
struct ValidationReport {
  std::vector<ExpressionVerdict> verdicts;
  std::vector<double> c1;               ///< per j: sum |coefficients| of F1_j
  std::vector<double> c2;               ///< per j: sum |coefficients| of F2_j
  std::vector<std::vector<double>> c3;  ///< per (j, r): max of A and B coefficient sums
  /// Per (j, r): A monomials mixing u and v, bounded through
  /// |u|^a |v|^b <= (a/D)|u|^D + (b/D)|v|^D. The weights are at most one,
  /// so c3 still bounds the split form.
  std::vector<std::vector<int>> amgm_mixed;
  Degrees degrees;

  bool all_accepted() const;
};

ValidationReport validate_structure(const NonlinearitySpec& spec);

struct EvaluateOptions {
  bool dealias = true;
  double decay_tol = kDefaultDecayTol;
};

/// Pointwise F1 + F2, cumulative-integral F3, then (by default) the
/// two-thirds rule. Q, Qx, Qxx must share grid and component count n.
SpectralField evaluate(const NonlinearitySpec& spec, const SpectralField& q,
                       const SpectralField& qx, const SpectralField& qxx,
                       const EvaluateOptions& options = {},
                       std::vector<DecayWarning>* warnings = nullptr);

/// Packs pointwise values u, v, w (each of length n) into the 6n array
/// consumed by PolyExpr::evaluate.
std::vector<cplx> pack_point(std::span<const cplx> u, std::span<const cplx> v,
                             std::span<const cplx> w);

/// Reusable evaluator: compiles every sub-expression once.
class NonlinearityEvaluator {
 public:
  explicit NonlinearityEvaluator(const NonlinearitySpec& spec);

  SpectralField operator()(const SpectralField& q, const SpectralField& qx,
                           const SpectralField& qxx, const EvaluateOptions& options = {},
                           std::vector<DecayWarning>* warnings = nullptr) const;

  std::size_t n() const { return n_; }

 private:
  struct Pair {
    std::size_t j, r;
    CompiledPoly a, b;
  };
  std::size_t n_;
  std::vector<CompiledPoly> local_;  // F1_j + F2_j merged
  std::vector<Pair> nonlocal_;
};

}  // namespace fdlab
