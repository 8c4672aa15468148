#pragma once

#include "mlspectra/scalar.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlspectra {

// Sparse multivariate polynomial: exponent vector -> coefficient.
// Zero coefficients are never stored. The term map is ordered, so iteration
// and printing are deterministic.
template <class T>
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, T>;

  // Zero polynomial in `num_vars` variables.
  Polynomial(int num_vars = 0) : num_vars_(num_vars) {}  // NOLINT(google-explicit-constructor)

  static Polynomial constant(int num_vars, const T& c) {
    Polynomial p(num_vars);
    p.add_term(Exponents(num_vars, 0), c);
    return p;
  }
  static Polynomial variable(int num_vars, int var) {
    Polynomial p(num_vars);
    Exponents e(num_vars, 0);
    e.at(var) = 1;
    p.add_term(e, T(1));
    return p;
  }
  static Polynomial monomial(const Exponents& e, const T& c) {
    Polynomial p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
  }

  int num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Exponents e, const T& c) {
    if (is_exact_zero(c)) return;
    if (static_cast<int>(e.size()) > num_vars_) lift(static_cast<int>(e.size()));
    e.resize(num_vars_, 0);
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (is_exact_zero(it->second)) terms_.erase(it);
    }
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }
  int degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }
  int min_degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = d < 0 ? e[var] : std::min(d, e[var]);
    return d;
  }

  // Coefficient of var^power, as a polynomial in the same variables
  // (with var's exponent zeroed).
  Polynomial coefficient_of(int var, int power) const {
    Polynomial out(num_vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] != power) continue;
      Exponents f = e;
      f[var] = 0;
      out.add_term(std::move(f), c);
    }
    return out;
  }

  Polynomial derivative(int var) const {
    Polynomial out(num_vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents f = e;
      f[var] -= 1;
      out.add_term(std::move(f), c * T(e[var]));
    }
    return out;
  }

  // Substitutes values for all variables.
  template <class U>
  U evaluate(std::span<const U> x) const {
    if (static_cast<int>(x.size()) < num_vars_) throw std::invalid_argument("evaluate: too few values");
    U sum = U(0);
    for (const auto& [e, c] : terms_) {
      U term = scalar_cast<U>(c);
      for (int v = 0; v < num_vars_; ++v)
        for (int p = 0; p < e[v]; ++p) term *= x[v];
      sum += term;
    }
    return sum;
  }

  template <class U>
  Polynomial<U> cast() const {
    Polynomial<U> out(num_vars_);
    for (const auto& [e, c] : terms_) out.add_term(e, scalar_cast<U>(c));
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    lift(std::max(num_vars_, o.num_vars_));
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    lift(std::max(num_vars_, o.num_vars_));
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    if (is_exact_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    const int nv = std::max(a.num_vars_, b.num_vars_);
    Polynomial out(nv);
    Exponents e(nv, 0);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (int v = 0; v < nv; ++v)
          e[v] = (v < static_cast<int>(ea.size()) ? ea[v] : 0) +
                 (v < static_cast<int>(eb.size()) ? eb[v] : 0);
        out.add_term(e, ca * cb);
      }
    return out;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.num_vars_ == b.num_vars_) return a.terms_ == b.terms_;
    Polynomial x = a, y = b;
    const int nv = std::max(a.num_vars_, b.num_vars_);
    x.lift(nv);
    y.lift(nv);
    return x.terms_ == y.terms_;
  }

  // Human-readable form, e.g. "-eps^2*b1^2 + 3*eps". Variables beyond
  // `names` print as x<i>.
  std::string to_string(std::span<const std::string> names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest total degree first for readability.
    std::vector<std::pair<Exponents, T>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
      int dl = 0, dr = 0;
      for (int x : l.first) dl += x;
      for (int x : r.first) dr += x;
      if (dl != dr) return dl > dr;
      return l.first > r.first;
    });
    for (const auto& [e, c] : ordered) {
      std::string coef = coefficient_string(c);
      bool negative = !coef.empty() && coef.front() == '-';
      if (negative) coef.erase(0, 1);
      if (first) {
        if (negative) os << "-";
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      bool has_mono = false;
      std::ostringstream mono;
      for (int v = 0; v < num_vars_; ++v) {
        if (e[v] == 0) continue;
        if (has_mono) mono << "*";
        mono << (v < static_cast<int>(names.size()) ? names[v] : "x" + std::to_string(v));
        if (e[v] > 1) mono << "^" << e[v];
        has_mono = true;
      }
      if (!has_mono) {
        os << coef;
      } else if (coef == "1") {
        os << mono.str();
      } else {
        os << coef << "*" << mono.str();
      }
    }
    return os.str();
  }

 private:
  static std::string coefficient_string(const T& c) {
    if constexpr (std::is_same_v<T, Rational>) {
      return mlspectra::to_string(c);
    } else if constexpr (std::is_same_v<T, Complex>) {
      std::ostringstream os;
      if (c.imag() == 0.0) {
        os << c.real();
      } else {
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
      }
      return os.str();
    } else {
      std::ostringstream os;
      os << c;
      return os.str();
    }
  }

  void lift(int nv) {
    if (nv <= num_vars_) return;
    TermMap lifted;
    for (auto& [e, c] : terms_) {
      Exponents f = e;
      f.resize(nv, 0);
      lifted.emplace(std::move(f), std::move(c));
    }
    terms_ = std::move(lifted);
    num_vars_ = nv;
  }

  int num_vars_ = 0;
  TermMap terms_;
};

template <class T>
inline bool is_exact_zero(const Polynomial<T>& p) {
  return p.is_zero();
}

using QPoly = Polynomial<Rational>;
using CPoly = Polynomial<Complex>;

// Parses expressions such as "-eps^2*(b1^2 + b2^2) + 3/2*b0" over the
// given variable names. Supports + - * ^ (non-negative integer powers),
// parentheses and rational literals.
QPoly parse_polynomial(std::string_view text, std::span<const std::string> names);

// Determinant and adjugate over a commutative ring by cofactor expansion.
// Intended for n <= 4; no division is performed.
template <class R>
R cofactor_determinant(const std::vector<std::vector<R>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return R(1);
  if (n == 1) return a[0][0];
  if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  R det{};
  bool first = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_exact_zero(a[0][j])) continue;
    std::vector<std::vector<R>> minor(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      minor[r - 1].reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) minor[r - 1].push_back(a[r][c]);
    }
    R term = a[0][j] * cofactor_determinant(minor);
    if (j % 2 == 1) term = -term;
    if (first) {
      det = term;
      first = false;
    } else {
      det += term;
    }
  }
  if (first) return a[0][0] - a[0][0];
  return det;
}

// `one` is the ring's unit; the 1x1 adjugate is [one].
template <class R>
std::vector<std::vector<R>> cofactor_adjugate(const std::vector<std::vector<R>>& a, const R& one) {
  const std::size_t n = a.size();
  std::vector<std::vector<R>> adj(n, std::vector<R>(n, a[0][0] - a[0][0]));
  if (n == 1) {
    adj[0][0] = one;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // adj(i, j) = (-1)^{i+j} det(minor removing row j, col i)
      std::vector<std::vector<R>> minor;
      minor.reserve(n - 1);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<R> row;
        row.reserve(n - 1);
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(a[r][c]);
        minor.push_back(std::move(row));
      }
      R d = cofactor_determinant(minor);
      adj[i][j] = ((i + j) % 2 == 0) ? d : R(-d);
    }
  return adj;
}

}  // namespace mlspectra
