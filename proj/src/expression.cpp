#include "geodex/expression.hpp"

#include <cctype>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace geodex
{

std::string DomainError::short_repr(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Rational::Rational(std::int64_t n, std::int64_t d)
{
  if (d == 0) {
    throw std::invalid_argument("Rational: zero denominator");
  }
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

// ---------------------------------------------------------------------------
// Construction

Expr::Expr()
: node_(std::make_shared<detail::Node>(detail::Node{detail::Constant{0.0}})) {}

Expr Expr::constant(double value)
{
  if (!std::isfinite(value)) {
    throw std::invalid_argument("Expr: non-finite constant");
  }
  return Expr(std::make_shared<detail::Node>(detail::Node{detail::Constant{value}}));
}

Expr Expr::variable(Var v)
{
  return Expr(std::make_shared<detail::Node>(detail::Node{detail::Variable{v}}));
}

Expr Expr::unary(UnaryOp op, Expr arg)
{
  if (op == UnaryOp::negate && arg.is_constant()) {
    return constant(-arg.constant_value());
  }
  return Expr(std::make_shared<detail::Node>(detail::Node{detail::Unary{op, std::move(arg)}}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs)
{
  return Expr(
    std::make_shared<detail::Node>(
      detail::Node{detail::Binary{op, std::move(lhs), std::move(rhs)}}));
}

Expr Expr::power(Expr base, Rational exponent)
{
  return Expr(
    std::make_shared<detail::Node>(detail::Node{detail::Power{std::move(base), exponent}}));
}

bool Expr::is_constant() const
{
  return std::holds_alternative<detail::Constant>(node_->data);
}

bool Expr::is_constant(double value) const
{
  return is_constant() && constant_value() == value;
}

double Expr::constant_value() const
{
  return std::get<detail::Constant>(node_->data).value;
}

bool structurally_equal(const Expr & a, const Expr & b)
{
  if (a.node_ == b.node_) {
    return true;
  }
  const auto & da = a.node_->data;
  const auto & db = b.node_->data;
  if (da.index() != db.index()) {
    return false;
  }
  if (const auto * c = std::get_if<detail::Constant>(&da)) {
    return c->value == std::get<detail::Constant>(db).value;
  }
  if (const auto * v = std::get_if<detail::Variable>(&da)) {
    return v->var == std::get<detail::Variable>(db).var;
  }
  if (const auto * u = std::get_if<detail::Unary>(&da)) {
    const auto & w = std::get<detail::Unary>(db);
    return u->op == w.op && structurally_equal(u->arg, w.arg);
  }
  if (const auto * bin = std::get_if<detail::Binary>(&da)) {
    const auto & o = std::get<detail::Binary>(db);
    return bin->op == o.op && structurally_equal(bin->lhs, o.lhs) &&
           structurally_equal(bin->rhs, o.rhs);
  }
  const auto & p = std::get<detail::Power>(da);
  const auto & o = std::get<detail::Power>(db);
  return p.exponent == o.exponent && structurally_equal(p.base, o.base);
}

Expr operator+(const Expr & a, const Expr & b)
{
  if (a.is_constant(0.0)) {
    return b;
  }
  if (b.is_constant(0.0)) {
    return a;
  }
  return Expr::binary(BinaryOp::add, a, b);
}

Expr operator-(const Expr & a, const Expr & b)
{
  if (b.is_constant(0.0)) {
    return a;
  }
  if (a.is_constant(0.0)) {
    return -b;
  }
  return Expr::binary(BinaryOp::sub, a, b);
}

Expr operator*(const Expr & a, const Expr & b)
{
  if (a.is_constant(0.0) || b.is_constant(0.0)) {
    return Expr::constant(0.0);
  }
  if (a.is_constant(1.0)) {
    return b;
  }
  if (b.is_constant(1.0)) {
    return a;
  }
  return Expr::binary(BinaryOp::mul, a, b);
}

Expr operator/(const Expr & a, const Expr & b)
{
  if (a.is_constant(0.0)) {
    return Expr::constant(0.0);
  }
  if (b.is_constant(1.0)) {
    return a;
  }
  return Expr::binary(BinaryOp::div, a, b);
}

Expr operator-(const Expr & a)
{
  return Expr::unary(UnaryOp::negate, a);
}

Expr pow(const Expr & base, Rational exponent)
{
  if (exponent.num == 0) {
    return Expr::constant(1.0);
  }
  if (exponent == Rational(1) || base.is_constant(1.0)) {
    return base;
  }
  if (base.is_constant(0.0) && exponent.num > 0) {
    return Expr::constant(0.0);
  }
  return Expr::power(base, exponent);
}

namespace detail
{
void throw_domain(const char * reason, const Expr & at)
{
  throw DomainError(reason, print(at));
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Parsing

namespace
{

class Parser
{
public:
  explicit Parser(std::string_view src)
  : src_(src) {}

  Expr parse_all()
  {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) {
      fail("expected operator or end of input");
    }
    return e;
  }

private:
  [[noreturn]] void fail(const std::string & msg) const { throw ParseError(msg, pos_); }

  void skip_ws()
  {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  char peek()
  {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c)
  {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c)
  {
    if (!accept(c)) {
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr parse_expr()
  {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term()
  {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor()
  {
    if (accept('-')) {
      return Expr::unary(UnaryOp::negate, parse_factor());
    }
    return parse_power();
  }

  Expr parse_power()
  {
    Expr base = parse_atom();
    if (accept('^')) {
      return Expr::power(base, parse_rational());
    }
    return base;
  }

  std::int64_t parse_integer()
  {
    const bool negative = accept('-');
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) {
      fail("expected integer exponent");
    }
    std::int64_t v = 0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc()) {
      pos_ = start;
      fail("integer exponent out of range");
    }
    return negative ? -v : v;
  }

  Rational parse_rational()
  {
    if (accept('(')) {
      const std::int64_t num = parse_integer();
      std::int64_t den = 1;
      if (accept('/')) {
        const std::size_t at = pos_;
        den = parse_integer();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator in exponent");
        }
      }
      expect(')');
      return Rational(num, den);
    }
    return Rational(parse_integer());
  }

  Expr parse_number()
  {
    const std::size_t start = pos_;
    auto digits = [&] {
        const std::size_t s = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          ++pos_;
        }
        return pos_ - s;
      };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      pos_ = start;
      fail("expected number");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        ++pos_;
      }
      if (digits() == 0) {
        pos_ = save;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_ || !std::isfinite(v)) {
      pos_ = start;
      fail("invalid number");
    }
    return Expr::constant(v);
  }

  Expr parse_atom()
  {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      }
      const std::string_view id = src_.substr(start, pos_ - start);
      if (id == "x") {
        return Expr::variable(Var::x);
      }
      if (id == "y") {
        return Expr::variable(Var::y);
      }
      UnaryOp op;
      if (id == "sqrt") {
        op = UnaryOp::sqrt;
      } else if (id == "sin") {
        op = UnaryOp::sin;
      } else if (id == "cos") {
        op = UnaryOp::cos;
      } else if (id == "exp") {
        op = UnaryOp::exp;
      } else if (id == "log") {
        op = UnaryOp::log;
      } else {
        pos_ = start;
        fail("unknown identifier '" + std::string(id) + "'");
      }
      expect('(');
      Expr arg = parse_expr();
      expect(')');
      return Expr::unary(op, arg);
    }
    if (c == '\0') {
      fail("unexpected end of input, expected number, variable, function or '('");
    }
    fail(std::string("unexpected '") + c + "', expected number, variable, function or '('");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

const char * func_name(UnaryOp op)
{
  switch (op) {
    case UnaryOp::sqrt: return "sqrt";
    case UnaryOp::sin: return "sin";
    case UnaryOp::cos: return "cos";
    case UnaryOp::exp: return "exp";
    case UnaryOp::log: return "log";
    case UnaryOp::negate: break;
  }
  return "-";
}

}  // namespace

Expr parse(std::string_view source)
{
  return Parser(source).parse_all();
}

// ---------------------------------------------------------------------------
// Printing

std::string print(const Expr & e)
{
  const auto & data = e.node().data;
  if (const auto * c = std::get_if<detail::Constant>(&data)) {
    if (std::signbit(c->value)) {
      return "(-" + DomainError::short_repr(-c->value) + ")";
    }
    return DomainError::short_repr(c->value);
  }
  if (const auto * v = std::get_if<detail::Variable>(&data)) {
    return v->var == Var::x ? "x" : "y";
  }
  if (const auto * u = std::get_if<detail::Unary>(&data)) {
    if (u->op == UnaryOp::negate) {
      return "(-" + print(u->arg) + ")";
    }
    return std::string(func_name(u->op)) + "(" + print(u->arg) + ")";
  }
  if (const auto * b = std::get_if<detail::Binary>(&data)) {
    static constexpr const char * ops[] = {" + ", " - ", " * ", " / "};
    return "(" + print(b->lhs) + ops[static_cast<int>(b->op)] + print(b->rhs) + ")";
  }
  const auto & p = std::get<detail::Power>(data);
  std::string exponent;
  if (p.exponent.is_integer() && p.exponent.num >= 0) {
    exponent = std::to_string(p.exponent.num);
  } else {
    exponent = "(" + std::to_string(p.exponent.num) + "/" + std::to_string(p.exponent.den) + ")";
  }
  return "(" + print(p.base) + ")^" + exponent;
}

// ---------------------------------------------------------------------------
// Differentiation

Expr differentiate(const Expr & e, Var var)
{
  const auto & data = e.node().data;
  if (std::holds_alternative<detail::Constant>(data)) {
    return Expr::constant(0.0);
  }
  if (const auto * v = std::get_if<detail::Variable>(&data)) {
    return Expr::constant(v->var == var ? 1.0 : 0.0);
  }
  if (const auto * u = std::get_if<detail::Unary>(&data)) {
    const Expr & a = u->arg;
    const Expr da = differentiate(a, var);
    if (da.is_constant(0.0)) {
      return Expr::constant(0.0);
    }
    switch (u->op) {
      case UnaryOp::negate:
        return -da;
      case UnaryOp::sqrt:
        return da / (Expr::constant(2.0) * e);
      case UnaryOp::sin:
        return Expr::unary(UnaryOp::cos, a) * da;
      case UnaryOp::cos:
        return -(Expr::unary(UnaryOp::sin, a) * da);
      case UnaryOp::exp:
        return e * da;
      case UnaryOp::log:
        return da / a;
    }
  }
  if (const auto * b = std::get_if<detail::Binary>(&data)) {
    const Expr dl = differentiate(b->lhs, var);
    const Expr dr = differentiate(b->rhs, var);
    switch (b->op) {
      case BinaryOp::add:
        return dl + dr;
      case BinaryOp::sub:
        return dl - dr;
      case BinaryOp::mul:
        return dl * b->rhs + b->lhs * dr;
      case BinaryOp::div:
        if (dr.is_constant(0.0)) {
          return dl / b->rhs;
        }
        return (dl * b->rhs - b->lhs * dr) / pow(b->rhs, Rational(2));
    }
  }
  const auto & p = std::get<detail::Power>(data);
  const Expr db = differentiate(p.base, var);
  if (db.is_constant(0.0)) {
    return Expr::constant(0.0);
  }
  const Rational r = p.exponent;
  const Rational lowered(r.num - r.den, r.den);
  return Expr::constant(r.value()) * pow(p.base, lowered) * db;
}

}  // namespace geodex
