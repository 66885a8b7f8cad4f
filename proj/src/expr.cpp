#include "sint/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cctype>

#include "sint/errors.hpp"

namespace sint {

struct Expr::Node {
  Op op = Op::Const;
  double value = 0.0;
  Expr lhs;
  Expr rhs;
  std::size_t size = 1;
};

namespace {

bool is_unary(Op op) { return op == Op::Neg || op == Op::Exp || op == Op::Ln; }
bool is_binary(Op op) { return op >= Op::Add; }

}  // namespace

Expr::Expr() : node_(nullptr) {}

Expr Expr::constant(double value) {
  if (!std::isfinite(value) || value < 0.0 || std::signbit(value)) {
    throw InputError("constant must be a nonnegative finite number");
  }
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::literal(double value) {
  if (value < 0.0) return unary(Op::Neg, constant(-value));
  return constant(value == 0.0 ? 0.0 : value);
}

Expr Expr::var() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    return std::shared_ptr<const Node>(std::move(n));
  }();
  return Expr(node);
}

Expr Expr::unary(Op op, Expr operand) {
  if (!is_unary(op)) throw InputError("not a unary operator");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->size = operand.size() + 1;
  n->lhs = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (!is_binary(op)) throw InputError("not a binary operator");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->size = lhs.size() + rhs.size() + 1;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

// A null node_ stands for Const 0 so that default construction never allocates.
Op Expr::op() const noexcept { return node_ ? node_->op : Op::Const; }
double Expr::value() const noexcept { return node_ ? node_->value : 0.0; }

const Expr& Expr::lhs() const noexcept {
  static const Expr zero;
  return node_ ? node_->lhs : zero;
}

const Expr& Expr::rhs() const noexcept {
  static const Expr zero;
  return node_ ? node_->rhs : zero;
}

std::size_t Expr::size() const noexcept { return node_ ? node_->size : 1; }

bool operator==(const Expr& a, const Expr& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Const:
      return a.value() == b.value();
    case Op::Var:
      return true;
    case Op::Neg:
    case Op::Exp:
    case Op::Ln:
      return a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Op::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Op::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Op::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(Op::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::unary(Op::Neg, a); }
Expr operator+(const Expr& a, double b) { return a + Expr::literal(b); }
Expr operator+(double a, const Expr& b) { return Expr::literal(a) + b; }
Expr operator*(double a, const Expr& b) { return Expr::literal(a) * b; }
Expr exp(const Expr& a) { return Expr::unary(Op::Exp, a); }
Expr ln(const Expr& a) { return Expr::unary(Op::Ln, a); }
Expr pow(const Expr& base, const Expr& exponent) { return Expr::binary(Op::Pow, base, exponent); }
Expr pow(const Expr& base, double exponent) { return pow(base, Expr::literal(exponent)); }

// ---------------------------------------------------------------------------
// Evaluation

struct Evaluator {
  double x;
  std::optional<DomainFault> fault;

  double fail(const Expr& where, std::string_view reason) {
    if (!fault) fault = DomainFault{where, x, reason};
    return 0.0;
  }

  double run(const Expr& e) {
    if (fault) return 0.0;
    switch (e.op()) {
      case Op::Const:
        return e.value();
      case Op::Var:
        return x;
      case Op::Neg:
        return -run(e.lhs());
      case Op::Exp:
        return std::exp(run(e.lhs()));
      case Op::Ln: {
        const double a = run(e.lhs());
        if (fault) return 0.0;
        if (!(a > 0.0)) return fail(e, "ln of non-positive argument");
        return std::log(a);
      }
      case Op::Add:
        return checked(e, run(e.lhs()) + run(e.rhs()));
      case Op::Sub:
        return checked(e, run(e.lhs()) - run(e.rhs()));
      case Op::Mul:
        return checked(e, run(e.lhs()) * run(e.rhs()));
      case Op::Div: {
        const double a = run(e.lhs());
        const double b = run(e.rhs());
        if (fault) return 0.0;
        if (b == 0.0) return fail(e, "division by zero");
        return checked(e, a / b);
      }
      case Op::Pow: {
        const double a = run(e.lhs());
        const double b = run(e.rhs());
        if (fault) return 0.0;
        if (a == 0.0 && b < 0.0) return fail(e, "zero to a negative power");
        return checked(e, std::pow(a, b));
      }
    }
    return fail(e, "corrupt expression");
  }

  double checked(const Expr& e, double v) {
    if (std::isnan(v) && !fault) return fail(e, "undefined arithmetic (NaN)");
    return v;
  }
};

EvalResult evaluate(const Expr& e, double x) {
  Evaluator ev{x, std::nullopt};
  const double v = ev.run(e);
  if (ev.fault) return EvalResult(std::move(*ev.fault));
  return EvalResult(v);
}

ScalarFn as_function(Expr e) {
  return [e = std::move(e)](double x) { return evaluate(e, x); };
}

ScalarFn ln_of(ScalarFn f) {
  return [f = std::move(f)](double x) -> EvalResult {
    EvalResult r = f(x);
    if (!r) return r;
    if (!(r.value() > 0.0)) return DomainFault{Expr(), x, "ln of non-positive argument"};
    return std::log(r.value());
  };
}

ScalarFn compose(Expr outer, ScalarFn inner) {
  return [outer = std::move(outer), inner = std::move(inner)](double x) -> EvalResult {
    EvalResult r = inner(x);
    if (!r) return r;
    return evaluate(outer, r.value());
  };
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "empty expression");
    Expr e = sum();
    skip_ws();
    if (pos_ < text_.size()) {
      throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(pos_, std::string("expected '") + c + "'");
  }

  Expr sum() {
    Expr e = product();
    for (;;) {
      if (accept('+')) {
        e = e + product();
      } else if (accept('-')) {
        e = e - product();
      } else {
        return e;
      }
    }
  }

  Expr product() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e = e * unary();
      } else if (accept('/')) {
        e = e / unary();
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return pow(base, unary());
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError(start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    double v = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
      throw ParseError(start, "number out of range");
    }
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return Expr::var();
    Op op;
    if (name == "exp") {
      op = Op::Exp;
    } else if (name == "ln") {
      op = Op::Ln;
    } else {
      throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
    }
    expect('(');
    Expr arg = sum();
    expect(')');
    return Expr::unary(op, std::move(arg));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

void print(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::Const:
      out += format_number(e.value());
      return;
    case Op::Var:
      out += 'x';
      return;
    case Op::Neg:
      out += "(-";
      print(e.lhs(), out);
      out += ')';
      return;
    case Op::Exp:
    case Op::Ln:
      out += e.op() == Op::Exp ? "exp(" : "ln(";
      print(e.lhs(), out);
      out += ')';
      return;
    default:
      break;
  }
  static constexpr std::array<const char*, 5> symbols{" + ", " - ", " * ", " / ", " ^ "};
  out += '(';
  print(e.lhs(), out);
  out += symbols[static_cast<std::size_t>(e.op()) - static_cast<std::size_t>(Op::Add)];
  print(e.rhs(), out);
  out += ')';
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print_canonical(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace sint
