#ifndef GEODEX_EXPRESSION_HPP
#define GEODEX_EXPRESSION_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "geodex/errors.hpp"
#include "geodex/scalar_traits.hpp"

namespace geodex
{

enum class Var { x, y };

enum class UnaryOp { negate, sqrt, sin, cos, exp, log };

enum class BinaryOp { add, sub, mul, div };

/// Literal exponent num/den, stored reduced with den > 0.
struct Rational
{
  std::int64_t num = 1;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  bool is_integer() const { return den == 1; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational &, const Rational &) = default;
};

class Expr;

namespace detail
{
struct Constant { double value; };
struct Variable { Var var; };
struct Unary;
struct Binary;
struct Power;
struct Node;
}  // namespace detail

/**
 * Immutable symbolic scalar expression in the chart variables x and y.
 *
 * Nodes are shared; copying an Expr is cheap. Negation of a literal constant is
 * folded into a negative constant, so `-3` and `(-3)` both produce the constant -3.
 */
class Expr
{
public:
  /// The constant 0.
  Expr();

  static Expr constant(double value);
  static Expr variable(Var v);
  static Expr unary(UnaryOp op, Expr arg);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr power(Expr base, Rational exponent);

  bool is_constant() const;
  bool is_constant(double value) const;
  /// Only valid when is_constant().
  double constant_value() const;

  const detail::Node & node() const { return *node_; }

  friend bool structurally_equal(const Expr & a, const Expr & b);

private:
  explicit Expr(std::shared_ptr<const detail::Node> n)
  : node_(std::move(n)) {}

  std::shared_ptr<const detail::Node> node_;
};

namespace detail
{
struct Unary { UnaryOp op; Expr arg; };
struct Binary { BinaryOp op; Expr lhs; Expr rhs; };
struct Power { Expr base; Rational exponent; };

struct Node
{
  std::variant<Constant, Variable, Unary, Binary, Power> data;
};
}  // namespace detail

// Builders with zero/one elimination. These are what `differentiate` uses.
Expr operator+(const Expr & a, const Expr & b);
Expr operator-(const Expr & a, const Expr & b);
Expr operator*(const Expr & a, const Expr & b);
Expr operator/(const Expr & a, const Expr & b);
Expr operator-(const Expr & a);
Expr pow(const Expr & base, Rational exponent);

/// Parses the expression grammar (see README). Throws ParseError.
Expr parse(std::string_view source);

/// Fully parenthesized text that parses back to a structurally equal tree.
std::string print(const Expr & e);

/// Exact partial derivative. Only literal zero/one nodes are simplified away.
Expr differentiate(const Expr & e, Var var);

namespace detail
{
[[noreturn]] void throw_domain(const char * reason, const Expr & at);

template<typename S>
S integer_power(const S & base, std::int64_t n)
{
  if (n == 0) {
    return ScalarTraits<S>::constant(1.0, base);
  }
  const std::int64_t m = n < 0 ? -n : n;
  S acc = base;
  for (std::int64_t i = 1; i < m; ++i) {
    acc = acc * base;
  }
  return acc;
}
}  // namespace detail

/**
 * Evaluates `e` at (x, y) over any scalar with ring operations and the
 * elementary functions (found by ADL, falling back to std::).
 *
 * Integer powers are repeated multiplication; half-integer powers go through
 * sqrt; every other rational power is exp(r log u). Throws DomainError naming the
 * offending subexpression when a function leaves its domain.
 */
template<typename S>
S evaluate(const Expr & e, const S & x, const S & y)
{
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  using Traits = ScalarTraits<S>;

  const auto & data = e.node().data;
  if (const auto * c = std::get_if<detail::Constant>(&data)) {
    return Traits::constant(c->value, x);
  }
  if (const auto * v = std::get_if<detail::Variable>(&data)) {
    return v->var == Var::x ? x : y;
  }
  if (const auto * u = std::get_if<detail::Unary>(&data)) {
    const S a = evaluate(u->arg, x, y);
    const double a0 = Traits::leading(a);
    switch (u->op) {
      case UnaryOp::negate:
        return -a;
      case UnaryOp::sqrt:
        if (a0 < 0.0 || (Traits::smooth && a0 == 0.0) || std::isnan(a0)) {
          detail::throw_domain("sqrt of negative argument", e);
        }
        return sqrt(a);
      case UnaryOp::sin:
        return sin(a);
      case UnaryOp::cos:
        return cos(a);
      case UnaryOp::exp:
        return exp(a);
      case UnaryOp::log:
        if (!(a0 > 0.0)) {
          detail::throw_domain("log of non-positive argument", e);
        }
        return log(a);
    }
  }
  if (const auto * b = std::get_if<detail::Binary>(&data)) {
    const S l = evaluate(b->lhs, x, y);
    const S r = evaluate(b->rhs, x, y);
    switch (b->op) {
      case BinaryOp::add:
        return l + r;
      case BinaryOp::sub:
        return l - r;
      case BinaryOp::mul:
        return l * r;
      case BinaryOp::div:
        if (Traits::leading(r) == 0.0) {
          detail::throw_domain("division by zero", e);
        }
        return l / r;
    }
  }
  const auto & p = std::get<detail::Power>(data);
  const S base = evaluate(p.base, x, y);
  const double b0 = Traits::leading(base);
  const Rational q = p.exponent;
  S result;
  if (q.is_integer()) {
    if (q.num < 0 && b0 == 0.0) {
      detail::throw_domain("division by zero", e);
    }
    result = detail::integer_power(base, q.num);
  } else if (q.den == 2) {
    if (b0 < 0.0 || ((Traits::smooth || q.num < 0) && b0 == 0.0)) {
      detail::throw_domain("sqrt of negative argument", e);
    }
    result = detail::integer_power(S(sqrt(base)), q.num);
  } else {
    if (!(b0 > 0.0)) {
      detail::throw_domain("fractional power of non-positive argument", e);
    }
    return exp(log(base) * q.value());
  }
  if (q.num < 0) {
    return Traits::constant(1.0, base) / result;
  }
  return result;
}

inline double evaluate(const Expr & e, double x, double y) { return evaluate<double>(e, x, y); }

}  // namespace geodex

#endif  // GEODEX_EXPRESSION_HPP
