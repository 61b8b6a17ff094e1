#ifndef GEODEX_SCALAR_TRAITS_HPP
#define GEODEX_SCALAR_TRAITS_HPP

namespace geodex
{

/**
 * Adapter that lets expression evaluation and the Christoffel formulas run over
 * any scalar: plain doubles, truncated power series, and forward sensitivities.
 *
 * `leading` is the real value used for domain checks (the constant term of a
 * series, the value of a dual). `smooth` scalars carry derivatives, so sqrt at
 * exactly zero is rejected for them.
 */
template<typename S>
struct ScalarTraits
{
  static constexpr bool smooth = false;
  static double leading(const S & s) { return static_cast<double>(s); }
  static S constant(double c, const S &) { return S(c); }
};

template<typename S>
double leading_value(const S & s) { return ScalarTraits<S>::leading(s); }

}  // namespace geodex

#endif  // GEODEX_SCALAR_TRAITS_HPP
