#include "mlspectra/polynomial.hpp"

#include <cctype>

namespace mlspectra {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names)
      : text_(text), names_(names), nv_(static_cast<int>(names.size())) {}

  QPoly parse() {
    QPoly p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse_polynomial: " + what + " at offset " + std::to_string(pos_) +
                                " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  QPoly expression() {
    QPoly acc(nv_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    QPoly t = term();
    acc = negate ? QPoly(-t) : t;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  QPoly term() {
    QPoly acc = power();
    while (true) {
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        QPoly d = power();
        if (d.size() != 1 || d.total_degree() != 0) fail("division only by constants");
        acc *= Rational(1) / d.terms().begin()->second;
      } else {
        break;
      }
    }
    return acc;
  }

  QPoly power() {
    QPoly base = factor();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      QPoly out = QPoly::constant(nv_, Rational(1));
      for (int i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return base;
  }

  QPoly factor() {
    skip_space();
    if (accept('(')) {
      QPoly inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (accept('-')) return -factor();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      return QPoly::constant(nv_, parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      for (int v = 0; v < nv_; ++v)
        if (names_[v] == name) return QPoly::variable(nv_, v);
      fail("unknown variable '" + std::string(name) + "'");
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  int nv_;
  std::size_t pos_ = 0;
};

}  // namespace

QPoly parse_polynomial(std::string_view text, std::span<const std::string> names) {
  return Parser(text, names).parse();
}

}  // namespace mlspectra
