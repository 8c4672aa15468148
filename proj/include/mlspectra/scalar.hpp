#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

namespace mlspectra {

// Expression templates are disabled so that `auto` bindings hold values.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Complex = std::complex<double>;

enum class Field { rational, real, complex };

std::string to_string(Field field);
Field field_from_string(std::string_view name);

// Accepts "p/q", "p", "-p/q" and plain decimal literals ("0.25").
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
double to_double(const Rational& value);

// Exact rational value of a finite double.
Rational rational_from_double(double value);

// Best rational approximation with denominator <= max_den, accepted only if
// it lies within tol of value.
std::optional<Rational> rationalize(double value, std::int64_t max_den, double tol);

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
inline bool is_exact_zero(const T& v) {
  return v == T(0);
}

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Complex& v) { return std::abs(v); }
inline double magnitude(const Rational& v) { return std::abs(to_double(v)); }

template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<From, Rational>) {
    return To(to_double(v));
  } else if constexpr (std::is_same_v<To, Complex>) {
    return Complex(v);
  } else {
    static_assert(std::is_same_v<To, double> && std::is_same_v<From, Complex>,
                  "unsupported scalar conversion");
    return v.real();
  }
}

}  // namespace mlspectra
