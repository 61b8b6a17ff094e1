#include <doctest.h>

#include <cmath>

#include "geodex/expression.hpp"
#include "geodex/jet.hpp"
#include "test_support.hpp"

using namespace geodex;
using geodex::testing::ExprGenerator;

namespace
{
Expr X() { return Expr::variable(Var::x); }
Expr Y() { return Expr::variable(Var::y); }
Expr C(double v) { return Expr::constant(v); }
Expr bin(BinaryOp op, Expr a, Expr b) { return Expr::binary(op, std::move(a), std::move(b)); }
}  // namespace

TEST_CASE("parse builds the tree under standard precedence")
{
  const Expr saddle = parse("x^3 - 3*x*y^2");
  const Expr expected = bin(
    BinaryOp::sub, Expr::power(X(), Rational(3)),
    bin(BinaryOp::mul, bin(BinaryOp::mul, C(3), X()), Expr::power(Y(), Rational(2))));
  CHECK(structurally_equal(saddle, expected));

  CHECK(structurally_equal(parse("0"), C(0)));

  const Expr sphere = parse("sqrt(1 - x^2 - y^2)");
  const Expr sphere_expected = Expr::unary(
    UnaryOp::sqrt,
    bin(
      BinaryOp::sub, bin(BinaryOp::sub, C(1), Expr::power(X(), Rational(2))),
      Expr::power(Y(), Rational(2))));
  CHECK(structurally_equal(sphere, sphere_expected));
}

TEST_CASE("unary minus binds looser than power, tighter than product")
{
  CHECK(structurally_equal(parse("-x^2"), Expr::unary(UnaryOp::negate, Expr::power(X(), Rational(2)))));
  CHECK(structurally_equal(parse("-3"), C(-3)));
  CHECK(structurally_equal(parse("-(3)"), C(-3)));
  CHECK(structurally_equal(
      parse("2*-x"), bin(BinaryOp::mul, C(2), Expr::unary(UnaryOp::negate, X()))));
  CHECK(structurally_equal(parse("x - y - 1"), bin(BinaryOp::sub, bin(BinaryOp::sub, X(), Y()), C(1))));
  CHECK(structurally_equal(parse("x / y / 2"), bin(BinaryOp::div, bin(BinaryOp::div, X(), Y()), C(2))));
  CHECK(evaluate(parse("-3^2"), 0.0, 0.0) == -9.0);
  CHECK(structurally_equal(parse("x^(1/2)"), Expr::power(X(), Rational(1, 2))));
  CHECK(structurally_equal(parse("x^(2/4)"), Expr::power(X(), Rational(1, 2))));
  CHECK(structurally_equal(parse("y^-2"), Expr::power(Y(), Rational(-2))));
  CHECK(structurally_equal(parse("  1.5e-3 *x "), bin(BinaryOp::mul, C(1.5e-3), X())));
}

TEST_CASE("parse errors carry offsets")
{
  auto offset_of = [](const char * src) -> long {
      try {
        parse(src);
      } catch (const ParseError & e) {
        return static_cast<long>(e.offset());
      }
      return -1;
    };
  CHECK(offset_of("x +") == 3);
  CHECK(offset_of("z + 1") == 0);
  CHECK(offset_of("x ^ y") == 4);
  CHECK(offset_of("x^(1/0)") == 5);
  CHECK(offset_of("sqrt x") == 5);
  CHECK(offset_of("(x + 1") == 6);
  CHECK(offset_of("x y") == 2);
  CHECK(offset_of("x^0.5") == 3);
  CHECK(offset_of("") == 0);

  try {
    parse("1 + tan(x)");
    FAIL("expected ParseError");
  } catch (const ParseError & e) {
    CHECK(std::string(e.what()).find("unknown identifier 'tan'") != std::string::npos);
  }
}

TEST_CASE("evaluate")
{
  CHECK(evaluate(parse("x*y"), 2.0, 3.0) == 6.0);
  CHECK(evaluate(parse("sqrt(1-x^2-y^2)"), 0.5, 0.5) == doctest::Approx(0.70710678118).epsilon(1e-11));
  CHECK(evaluate(parse("x^(3/2)"), 4.0, 0.0) == doctest::Approx(8.0));
  CHECK(evaluate(parse("x^(1/3)"), 8.0, 0.0) == doctest::Approx(2.0));
  CHECK(evaluate(parse("x^-2"), 2.0, 0.0) == 0.25);
  CHECK(evaluate(parse("x^0"), 0.0, 0.0) == 1.0);
  CHECK(evaluate(parse("exp(log(x)) + sin(0)*cos(y)"), 3.0, 1.0) == doctest::Approx(3.0));
}

TEST_CASE("evaluate reports domain errors with the offending node")
{
  try {
    evaluate(parse("1/y^2"), 7.0, 0.0);
    FAIL("expected DomainError");
  } catch (const DomainError & e) {
    CHECK(e.reason() == "division by zero");
    CHECK(e.node() == "(1 / (y)^2)");
  }
  CHECK_THROWS_AS(evaluate(parse("sqrt(x)"), -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(evaluate(parse("log(x)"), 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(evaluate(parse("x^(1/3)"), -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(evaluate(parse("x^-1"), 0.0, 0.0), DomainError);
  CHECK(evaluate(parse("sqrt(x)"), 0.0, 0.0) == 0.0);
}

TEST_CASE("differentiate examples")
{
  const Expr d_saddle = differentiate(parse("x^3 - 3*x*y^2"), Var::x);
  const Expr expected = parse("3*x^2 - 3*y^2");
  for (double x : {-1.5, 0.0, 0.7}) {
    for (double y : {-2.0, 0.3, 1.1}) {
      CHECK(evaluate(d_saddle, x, y) == doctest::Approx(evaluate(expected, x, y)).epsilon(1e-14));
    }
  }

  const Expr inv_sq = parse("1/y^2");
  const Expr d_inv = differentiate(inv_sq, Var::y);
  const double fd = testing::central_difference([&](double y) {return evaluate(inv_sq, 0.0, y);}, 0.5);
  CHECK(testing::close_rel(evaluate(d_inv, 0.0, 0.5), -2.0 / 0.125, 1e-14));
  CHECK(std::abs(evaluate(d_inv, 0.0, 0.5) - fd) <= 1e-8 * std::abs(fd));

  const Expr sphere = parse("sqrt(1-x^2-y^2)");
  const double dsx = evaluate(differentiate(sphere, Var::x), 0.5, 0.5);
  CHECK(dsx == doctest::Approx(-0.7071067811).epsilon(1e-10));
  const double fd_s = testing::central_difference(
    [&](double x) {return evaluate(sphere, x, 0.5);}, 0.5);
  CHECK(std::abs(dsx - fd_s) <= 1e-8 * std::abs(fd_s));
}

TEST_CASE("differentiate eliminates literal zero and one")
{
  CHECK(differentiate(parse("3"), Var::x).is_constant(0.0));
  CHECK(differentiate(parse("y^2"), Var::x).is_constant(0.0));
  CHECK(differentiate(parse("x"), Var::x).is_constant(1.0));
  CHECK(print(differentiate(parse("2*x"), Var::x)) == "2");
  CHECK(print(differentiate(parse("x^2"), Var::x)) == "(2 * x)");
  CHECK(print(differentiate(parse("sin(y)"), Var::y)) == "cos(y)");
}

TEST_CASE("property: print/parse round trip is structural")
{
  ExprGenerator gen(0xC0FFEE);
  for (int i = 0; i < 300; ++i) {
    const Expr e = gen(5);
    const std::string text = print(e);
    INFO(text);
    CHECK(structurally_equal(parse(text), e));
  }
}

TEST_CASE("property: derivative is linear")
{
  ExprGenerator gen(17, true);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  while (checked < 100) {
    const Expr e1 = gen(4);
    const Expr e2 = gen(4);
    const double a = 3.0 * u(gen.rng());
    const Expr combo = Expr::binary(
      BinaryOp::add, Expr::binary(BinaryOp::mul, Expr::constant(a), e1), e2);
    for (Var v : {Var::x, Var::y}) {
      const Expr lhs = differentiate(combo, v);
      const Expr d1 = differentiate(e1, v);
      const Expr d2 = differentiate(e2, v);
      const double x = u(gen.rng());
      const double y = u(gen.rng());
      const double l = evaluate(lhs, x, y);
      const double r = a * evaluate(d1, x, y) + evaluate(d2, x, y);
      CHECK(testing::close_rel(l, r, 1e-12));
    }
    ++checked;
  }
}

TEST_CASE("property: symbolic derivative matches central differences")
{
  ExprGenerator gen(4242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  int attempts = 0;
  while (checked < 200 && attempts < 20000) {
    ++attempts;
    const Expr e = gen(4);
    const double x = u(gen.rng());
    const double y = u(gen.rng());
    for (Var v : {Var::x, Var::y}) {
      double d = 0.0;
      double fd = 0.0;
      double f = 0.0;
      try {
        d = evaluate(differentiate(e, v), x, y);
        f = evaluate(e, x, y);
        fd = v == Var::x ?
          testing::central_difference([&](double t) {return evaluate(e, t, y);}, x) :
          testing::central_difference([&](double t) {return evaluate(e, x, t);}, y);
      } catch (const DomainError &) {
        continue;
      }
      // Skip points near singularities where the difference quotient is meaningless.
      if (!std::isfinite(d) || !std::isfinite(fd) || std::abs(f) > 1e3 || std::abs(d) > 1e3) {
        continue;
      }
      const double d2 = v == Var::x ?
        testing::central_difference(
        [&](double t) {return evaluate(differentiate(e, v), t, y);}, x, 1e-4) :
        testing::central_difference(
        [&](double t) {return evaluate(differentiate(e, v), x, t);}, y, 1e-4);
      if (!std::isfinite(d2) || std::abs(d2) > 1e3) {
        continue;
      }
      INFO(print(e), " at ", x, ", ", y);
      CHECK(testing::close_rel(d, fd, 1e-6));
      ++checked;
    }
  }
  CHECK(checked >= 200);
}

TEST_CASE("property: order-0 jet evaluation equals plain evaluation")
{
  ExprGenerator gen(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 200; ++i) {
    const Expr e = gen(4);
    const double x = u(gen.rng());
    const double y = u(gen.rng());
    double plain = 0.0;
    try {
      plain = evaluate(e, x, y);
    } catch (const DomainError &) {
      continue;
    }
    if (!std::isfinite(plain)) {
      continue;
    }
    double lifted = 0.0;
    try {
      lifted = evaluate(e, Jet<double>::constant(0, x), Jet<double>::constant(0, y))[0];
    } catch (const DomainError &) {
      // sqrt at exactly zero is rejected for series but allowed for doubles.
      continue;
    }
    INFO(print(e));
    CHECK(lifted == plain);
    ++checked;
  }
  CHECK(checked >= 200);
}
