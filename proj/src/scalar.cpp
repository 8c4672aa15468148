#include "mlspectra/scalar.hpp"

#include <stdexcept>

namespace mlspectra {

std::string to_string(Field field) {
  switch (field) {
    case Field::rational:
      return "rational";
    case Field::real:
      return "real";
    case Field::complex:
      return "complex";
  }
  return "unknown";
}

Field field_from_string(std::string_view name) {
  if (name == "rational") return Field::rational;
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  throw std::invalid_argument("unknown field '" + std::string(name) + "'");
}

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!is_digits(s)) throw std::invalid_argument("not an integer");
  BigInt v{std::string(s)};
  return neg ? BigInt(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  try {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      BigInt num = parse_integer(trim(s.substr(0, slash)));
      BigInt den = parse_integer(trim(s.substr(slash + 1)));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      std::string_view ip = s.substr(0, dot);
      std::string_view fp = s.substr(dot + 1);
      bool neg = !ip.empty() && ip.front() == '-';
      if (!ip.empty() && (ip.front() == '-' || ip.front() == '+')) ip.remove_prefix(1);
      if ((!ip.empty() && !is_digits(ip)) || (!fp.empty() && !is_digits(fp)) ||
          (ip.empty() && fp.empty())) {
        throw std::invalid_argument("bad decimal");
      }
      BigInt whole = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
      BigInt frac = fp.empty() ? BigInt(0) : BigInt(std::string(fp));
      BigInt scale = 1;
      for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
      Rational r = Rational(whole) + Rational(frac, scale);
      return neg ? Rational(-r) : r;
    }
    return Rational(parse_integer(s));
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse rational '" + std::string(text) + "'");
  }
}

std::string to_string(const Rational& value) { return value.str(); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  int exp = 0;
  double mant = std::frexp(value, &exp);
  // 53-bit mantissa as an integer.
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{BigInt(m)};
  BigInt two_pow = 1;
  for (int i = 0; i < std::abs(exp); ++i) two_pow *= 2;
  return exp >= 0 ? Rational(r * Rational(two_pow)) : Rational(r / Rational(two_pow));
}

std::optional<Rational> rationalize(double value, std::int64_t max_den, double tol) {
  if (!std::isfinite(value)) return std::nullopt;
  // Continued-fraction convergents.
  double x = value;
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(x);
    if (std::abs(a) > 1e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t h2 = ai * h1 + h0;
    std::int64_t k2 = ai * k1 + k0;
    if (k2 > max_den || k2 <= 0) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - value) <= tol) {
      return Rational(BigInt(h1), BigInt(k1));
    }
    double frac = x - a;
    if (frac < 1e-300) break;
    x = 1.0 / frac;
  }
  if (k1 > 0 && std::abs(static_cast<double>(h1) / static_cast<double>(k1) - value) <= tol) {
    return Rational(BigInt(h1), BigInt(k1));
  }
  return std::nullopt;
}

}  // namespace mlspectra
