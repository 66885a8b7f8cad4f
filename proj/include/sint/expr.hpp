#pragma once

// Expression DSL for integrands, kernels and bijections.
//
// Grammar (standard precedence, `^` binds tighter than unary minus and is
// right-associative):
//
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'x' | ('exp' | 'ln') '(' sum ')' | '(' sum ')'
//
// Numbers are nonnegative decimal literals with an optional exponent.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace sint {

enum class Op : std::uint8_t { Const, Var, Neg, Exp, Ln, Add, Sub, Mul, Div, Pow };

/// Immutable expression tree in one real variable. Copies share nodes.
class Expr {
 public:
  /// The constant 0.
  Expr();

  /// Nonnegative finite constant; throws InputError otherwise.
  static Expr constant(double value);
  /// Any finite value; negative values become Neg(Const |v|).
  static Expr literal(double value);
  static Expr var();
  static Expr unary(Op op, Expr operand);
  static Expr binary(Op op, Expr lhs, Expr rhs);

  Op op() const noexcept;
  double value() const noexcept;  // Const only
  const Expr& lhs() const noexcept;  // operand of unary nodes
  const Expr& rhs() const noexcept;

  std::size_t size() const noexcept;

  friend bool operator==(const Expr& a, const Expr& b) noexcept;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator+(const Expr& a, double b);
Expr operator+(double a, const Expr& b);
Expr operator*(double a, const Expr& b);
Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr pow(const Expr& base, double exponent);

/// Where and why an evaluation left the real domain.
struct DomainFault {
  Expr where;          // offending subexpression; Const 0 for non-DSL functions
  double x = 0.0;
  std::string_view reason;
};

/// Extended-real value or a tagged out-of-domain signal. Never a quiet NaN.
class EvalResult {
 public:
  EvalResult(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  EvalResult(DomainFault fault) : fault_(std::move(fault)) {}  // NOLINT

  bool ok() const noexcept { return !fault_.has_value(); }
  explicit operator bool() const noexcept { return ok(); }
  double value() const noexcept { return value_; }
  const DomainFault& fault() const { return *fault_; }

 private:
  double value_ = 0.0;
  std::optional<DomainFault> fault_;
};

/// Type-erased real function of one variable, as used by level sets,
/// quadrature and the Sugeno solver.
using ScalarFn = std::function<EvalResult(double)>;

Expr parse(std::string_view text);
EvalResult evaluate(const Expr& e, double x);
std::string print_canonical(const Expr& e);

ScalarFn as_function(Expr e);

/// x ↦ ln(f(x)) with the same out-of-domain rules as the DSL.
ScalarFn ln_of(ScalarFn f);
/// x ↦ outer(inner(x)).
ScalarFn compose(Expr outer, ScalarFn inner);

}  // namespace sint
