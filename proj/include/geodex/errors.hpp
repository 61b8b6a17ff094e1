#ifndef GEODEX_ERRORS_HPP
#define GEODEX_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace geodex
{

/// Malformed expression text. `offset()` is the byte offset of the offending token.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string & message, std::size_t offset)
  : std::runtime_error(message + " at byte " + std::to_string(offset)), offset_(offset)
  {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// A function was evaluated outside its domain (sqrt of a negative, log of a
/// non-positive, division by zero). Carries the offending subexpression when known
/// and the chart point when known.
class DomainError : public std::domain_error
{
public:
  explicit DomainError(const std::string & what, std::string node = {})
  : std::domain_error(what), reason_(what), node_(std::move(node))
  {}

  const std::string & reason() const noexcept { return reason_; }
  const std::string & node() const noexcept { return node_; }
  const std::optional<std::pair<double, double>> & point() const noexcept { return point_; }

  /// Attaches the chart point; callers rethrow with `throw;` to keep the dynamic type.
  void set_point(double x, double y)
  {
    point_ = std::make_pair(x, y);
    message_ = reason_ + (node_.empty() ? "" : " in '" + node_ + "'") + " at (" +
      short_repr(x) + ", " + short_repr(y) + ")";
  }

  const char * what() const noexcept override
  {
    return message_.empty() ? std::domain_error::what() : message_.c_str();
  }

  static std::string short_repr(double v);

private:
  std::string reason_;
  std::string node_;
  std::optional<std::pair<double, double>> point_;
  std::string message_;
};

/// Power series whose constant term vanishes was used as a divisor.
class SingularSeriesError : public DomainError
{
public:
  using DomainError::DomainError;
};

/// The metric fails E > 0, EG - F^2 > 0 at an evaluation point.
class DefinitenessError : public DomainError
{
public:
  using DomainError::DomainError;
};

}  // namespace geodex

#endif  // GEODEX_ERRORS_HPP
