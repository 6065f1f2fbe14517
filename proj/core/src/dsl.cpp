#include "fdlab/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace fdlab {

ParseError::ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NonlinearitySpec run() {
    skip();
    expect_word("n");
    expect('=');
    const long n = integer();
    if (n < 1) fail(ParseError::Kind::Syntax, "component count must be at least 1");
    expect(';');
    NonlinearitySpec spec(static_cast<std::size_t>(n));
    n_ = static_cast<std::size_t>(n);
    skip();
    while (pos_ < src_.size()) {
      statement(spec);
      skip();
    }
    return spec;
  }

 private:
  [[noreturn]] void fail(ParseError::Kind kind, const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(kind, line, col, what);
  }

  void skip() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(ParseError::Kind::Syntax, std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  bool at_word(std::string_view w) {
    skip();
    return src_.substr(pos_, w.size()) == w;
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail(ParseError::Kind::Syntax, "expected '" + std::string(w) + "'");
    pos_ += w.size();
  }

  long integer() {
    skip();
    long value = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), value);
    if (ec != std::errc{} || ptr == src_.data() + pos_) {
      fail(ParseError::Kind::Syntax, "expected an integer");
    }
    pos_ = static_cast<std::size_t>(ptr - src_.data());
    return value;
  }

  double real() {
    skip();
    // strtod needs a terminated buffer; copy the longest plausible numeral.
    std::size_t end = pos_;
    while (end < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[end])) ||
                                 src_[end] == '.' || src_[end] == 'e' || src_[end] == 'E' ||
                                 src_[end] == '+' || src_[end] == '-' ||
                                 src_[end] == 'i' || src_[end] == 'n' || src_[end] == 'f')) {
      ++end;
    }
    std::string buf(src_.substr(pos_, end - pos_));
    char* stop = nullptr;
    const double v = std::strtod(buf.c_str(), &stop);
    if (stop == buf.c_str()) fail(ParseError::Kind::Syntax, "expected a number");
    pos_ += static_cast<std::size_t>(stop - buf.c_str());
    return v;
  }

  std::size_t index(bool in_range_check = true) {
    const long j = integer();
    if (in_range_check && (j < 1 || static_cast<std::size_t>(j) > n_)) {
      fail(ParseError::Kind::ComponentRange,
           "component index " + std::to_string(j) + " out of range 1.." + std::to_string(n_));
    }
    return static_cast<std::size_t>(j - 1);
  }

  void statement(NonlinearitySpec& spec) {
    Target t{};
    if (at_word("F3A[")) {
      pos_ += 4;
      t = Target::F3A;
    } else if (at_word("F3B[")) {
      pos_ += 4;
      t = Target::F3B;
    } else if (at_word("F1[")) {
      pos_ += 3;
      t = Target::F1;
    } else if (at_word("F2[")) {
      pos_ += 3;
      t = Target::F2;
    } else {
      fail(ParseError::Kind::Syntax, "expected a target F1[j], F2[j], F3A[j,r] or F3B[j,r]");
    }
    const std::size_t j = index();
    std::size_t r = 0;
    if (t == Target::F3A || t == Target::F3B) {
      expect(',');
      r = index();
    }
    expect(']');
    expect('=');
    target_ = t;
    PolyExpr p = polyexpr();
    expect(';');
    switch (t) {
      case Target::F1: spec.add_f1(j, p); break;
      case Target::F2: spec.add_f2(j, p); break;
      case Target::F3A: spec.add_f3a(j, r, p); break;
      case Target::F3B: spec.add_f3b(j, r, p); break;
    }
  }

  PolyExpr polyexpr() {
    PolyExpr p = term();
    while (accept('+')) p += term();
    return p;
  }

  cplx coefficient() {
    if (peek() == '(') {
      // "(re+imi)", "(re-imi)" or "(re)".
      ++pos_;
      const double re = real();
      double im = 0.0;
      const char c = peek();
      if (c == '+' || c == '-') {
        im = real();
        expect('i');
      }
      expect(')');
      return {re, im};
    }
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') return {real(), 0.0};
    return {1.0, 0.0};
  }

  PolyExpr term() {
    const char first = peek();
    const bool has_coeff = first == '(' || first == '-' || first == '.' ||
                           std::isdigit(static_cast<unsigned char>(first));
    const cplx c = coefficient();
    Exponents e;
    bool need_factor = !has_coeff;
    while (need_factor || accept('*')) {
      need_factor = false;
      auto [tag, power] = factor();
      e[tag] += power;
    }
    if (e.empty()) fail(ParseError::Kind::Syntax, "a term needs at least one variable");
    PolyExpr p;
    p.add_term(c, e);
    return p;
  }

  std::pair<VarTag, int> factor() {
    VarTag tag = var();
    int power = 1;
    if (accept('^')) {
      const long pw = integer();
      if (pw < 1) fail(ParseError::Kind::Syntax, "exponents must be positive");
      power = static_cast<int>(pw);
    }
    return {tag, power};
  }

  VarTag var() {
    if (at_word("conj(")) {
      pos_ += 5;
      VarTag inner = var();
      expect(')');
      return {inner.component, conjugate(inner.slot)};
    }
    const char c = peek();
    Slot s{};
    if (c == 'u') {
      s = Slot::U;
    } else if (c == 'v') {
      s = Slot::V;
    } else if (c == 'w') {
      s = Slot::W;
    } else {
      fail(ParseError::Kind::Syntax, "expected a variable u<j>, v<j>, w<j> or conj(...)");
    }
    const std::size_t here = pos_;
    ++pos_;
    if (!slot_allowed(target_, s)) {
      pos_ = here;
      fail(ParseError::Kind::SlotForbidden,
           std::string("slot ") + c + " is forbidden in this sub-expression");
    }
    const std::size_t j = index();
    return {static_cast<int>(j), s};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t n_ = 0;
  Target target_ = Target::F1;
};

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_coefficient(cplx c) {
  std::string im = format_real(c.imag());
  if (im.front() != '-') im = "+" + im;
  return "(" + format_real(c.real()) + im + "i)";
}

std::string format_var(const VarTag& t) {
  static const char letters[] = {'u', 'v', 'w'};
  std::string base = letters[derivative_order(t.slot)] + std::to_string(t.component + 1);
  return is_conjugate(t.slot) ? "conj(" + base + ")" : base;
}

}  // namespace

NonlinearitySpec parse_spec(std::string_view text) { return Parser(text).run(); }

std::string print_poly(const PolyExpr& p) {
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) out += "\n    + ";
    first = false;
    out += format_coefficient(c);
    for (const auto& [tag, pw] : e) {
      out += "*" + format_var(tag);
      if (pw > 1) out += "^" + std::to_string(pw);
    }
  }
  return out;
}

std::string print_spec(const NonlinearitySpec& spec) {
  std::ostringstream os;
  os << "n=" << spec.n() << ";\n";
  for (std::size_t j = 0; j < spec.n(); ++j) {
    if (!spec.f1(j).empty()) os << target_name(Target::F1, j) << " = " << print_poly(spec.f1(j)) << ";\n";
    if (!spec.f2(j).empty()) os << target_name(Target::F2, j) << " = " << print_poly(spec.f2(j)) << ";\n";
  }
  for (std::size_t j = 0; j < spec.n(); ++j) {
    for (std::size_t r = 0; r < spec.n(); ++r) {
      const auto& pair = spec.f3(j, r);
      if (!pair) continue;
      if (!pair->a.empty()) os << target_name(Target::F3A, j, r) << " = " << print_poly(pair->a) << ";\n";
      if (!pair->b.empty()) os << target_name(Target::F3B, j, r) << " = " << print_poly(pair->b) << ";\n";
    }
  }
  return os.str();
}

}  // namespace fdlab
