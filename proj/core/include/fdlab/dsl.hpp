#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "fdlab/error.hpp"
#include "fdlab/nonlinearity.hpp"

namespace fdlab {

/// Nonlinearity source text (".fspec"):
///
///   spec    := header stmt*
///   header  := "n=" int ";"
///   stmt    := target "=" polyexpr ";"
///   target  := "F1[" j "]" | "F2[" j "]" | "F3A[" j "," r "]" | "F3B[" j "," r "]"
///   polyexpr:= term ("+" term)*
///   term    := coeff ("*" factor)*
///   factor  := var ("^" int)?
///   var     := ("u"|"v"|"w") idx | "conj(" var ")"
///
/// Coefficients are complex literals "(re+imi)"; a bare real number or an
/// omitted coefficient (meaning 1) is also accepted. '#' starts a comment.
/// Repeated targets accumulate.
class ParseError : public Error {
 public:
  enum class Kind { Syntax, ComponentRange, SlotForbidden };

  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& what);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

NonlinearitySpec parse_spec(std::string_view text);

/// Canonical text form; parse_spec(print_spec(s)) == s.
std::string print_spec(const NonlinearitySpec& spec);

/// Canonical text of one polynomial (no target, no trailing ';').
std::string print_poly(const PolyExpr& p);

}  // namespace fdlab
