#pragma once

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace ladder {

// Exact integers throughout the coefficient pipeline: the ladder parameters
// are integer products and the recursion tables grow multiplicatively, so
// fixed-width types overflow almost immediately.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Int& v) { return v.convert_to<double>(); }

/// num/den rounded once to double; safe when both operands exceed the
/// double range but their quotient does not.
inline double ratio_as_double(const Int& num, const Int& den) {
  return Rational(num, den).convert_to<double>();
}

inline Int factorial_int(int n) {
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// N·(N-1)···(N-n+1)
inline Int falling_factorial(int N, int n) {
  Int r = 1;
  for (int i = 0; i < n; ++i) r *= (N - i);
  return r;
}

inline Int binomial_int(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

/// Natural log of a positive exact integer, valid far past the double range.
// GCC's fortify analysis misreads the inlined cpp_int right shift at -O3 and
// reports an impossible memcpy bound; the shift result is 53 bits by
// construction.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wstringop-overflow"
#pragma GCC diagnostic ignored "-Wstringop-overread"
inline double log_int(const Int& v) {
  if (v <= 0) throw std::domain_error("log_int requires a positive value");
  const unsigned bits = boost::multiprecision::msb(v);
  if (bits < 1000) return std::log(to_double(v));
  Int top = v;
  top >>= (bits - 52);
  return std::log(to_double(top)) + (bits - 52) * 0.6931471805599453;
}
#pragma GCC diagnostic pop

}  // namespace ladder
