#pragma once
// Exact scalars: rationals (GMP), univariate polynomials over Q in the formal
// symbol u = q^(-1/2), and the field Q(u) of rational functions.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace padicsph {

using BigRat = mpq_class;
using BigInt = mpz_class;
using cplx = std::complex<double>;

/// Dense polynomial in u with rational coefficients. Index i holds the
/// coefficient of u^i; trailing zeros are never stored.
class UPoly {
 public:
  UPoly() = default;
  UPoly(long c) { if (c != 0) c_.emplace_back(c); }  // NOLINT(implicit)
  UPoly(const BigRat& c) { if (sgn(c) != 0) c_.push_back(c); }  // NOLINT(implicit)

  static UPoly monomial(const BigRat& c, int k) {
    UPoly r;
    if (sgn(c) == 0) return r;
    r.c_.assign(static_cast<std::size_t>(k) + 1, BigRat(0));
    r.c_[k] = c;
    return r;
  }

  static UPoly from_coeffs(std::vector<BigRat> c) {
    UPoly r;
    r.c_ = std::move(c);
    r.trim();
    return r;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<BigRat>& coeffs() const { return c_; }
  BigRat coef(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : BigRat(0);
  }
  const BigRat& lead() const { return c_.back(); }

  /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
  int low_degree() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return static_cast<int>(i);
    return 0;
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    UPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, BigRat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  UPoly scaled(const BigRat& s) const {
    if (sgn(s) == 0) return {};
    UPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  /// Multiply by u^k, k >= 0.
  UPoly shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    UPoly r;
    r.c_.assign(static_cast<std::size_t>(k), BigRat(0));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }

  /// Divide by u^k; requires u^k | *this.
  UPoly unshifted(int k) const {
    UPoly r;
    if (is_zero() || k == 0) return *this;
    r.c_.assign(c_.begin() + k, c_.end());
    return r;
  }

  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw ArithmeticError("division by zero polynomial");
    UPoly q, r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c_.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, BigRat(0));
    const BigRat inv = 1 / b.lead();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      const int s = r.degree() - b.degree();
      BigRat f = r.lead() * inv;
      q.c_[s] = f;
      for (int i = 0; i <= b.degree(); ++i) r.c_[i + s] -= f * b.c_[i];
      r.trim();
    }
    q.trim();
    return {q, r};
  }

  UPoly monic() const {
    if (is_zero() || lead() == 1) return *this;
    return scaled(1 / lead());
  }

  /// Monic gcd (zero only if both inputs are zero).
  static UPoly gcd(UPoly a, UPoly b) {
    if (a.is_constant() && !a.is_zero()) return UPoly(1);
    if (b.is_constant() && !b.is_zero()) return UPoly(1);
    // Common powers of u come out cheaply and are frequent.
    const int k = (a.is_zero() || b.is_zero())
                      ? 0
                      : std::min(a.low_degree(), b.low_degree());
    if (k > 0) { a = a.unshifted(k); b = b.unshifted(k); }
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic().shifted(k);
  }

  cplx eval(cplx x) const {
    cplx acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
  }

  BigRat eval(const BigRat& x) const {
    BigRat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Sparse "c*u^k" form in ascending degree, e.g. "1*u^0 - 2/3*u^2".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      BigRat a = c_[i];
      if (first) {
        if (sgn(a) < 0) { s += "-"; a = -a; }
      } else {
        s += sgn(a) < 0 ? " - " : " + ";
        if (sgn(a) < 0) a = -a;
      }
      s += a.get_str() + "*u^" + std::to_string(i);
      first = false;
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<BigRat> c_;
};

/// Element of Q(u): num/den with den monic and gcd(num, den) = 1.
class RatF {
 public:
  RatF() : den_(1) {}
  RatF(long c) : num_(c), den_(1) {}  // NOLINT(implicit)
  RatF(const BigRat& c) : num_(c), den_(1) {}  // NOLINT(implicit)
  RatF(const UPoly& p) : num_(p), den_(1) {}  // NOLINT(implicit)

  /// Reduced representative with monic denominator.
  static RatF normalize(UPoly num, UPoly den) {
    if (den.is_zero()) throw ArithmeticError("division by zero polynomial");
    RatF r;
    if (num.is_zero()) return r;
    if (!den.is_constant()) {
      UPoly g = UPoly::gcd(num, den);
      if (!g.is_one()) {
        num = UPoly::divmod(num, g).first;
        den = UPoly::divmod(den, g).first;
      }
    }
    BigRat l = den.lead();
    if (l != 1) {
      BigRat inv = 1 / l;
      num = num.scaled(inv);
      den = den.scaled(inv);
    }
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  static RatF u() { return RatF(UPoly::monomial(1, 1)); }
  /// u^k for any integer k.
  static RatF u_pow(int k) {
    if (k >= 0) return RatF(UPoly::monomial(1, k));
    RatF r;
    r.num_ = UPoly(1);
    r.den_ = UPoly::monomial(1, -k);
    return r;
  }
  /// q = u^-2.
  static RatF q() { return u_pow(-2); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  BigRat constant_value() const { return num_.coef(0); }

  RatF operator-() const {
    RatF r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatF operator+(const RatF& a, const RatF& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) return RatF(a.num_ + b.num_);
    if (a.den_ == b.den_) return normalize(a.num_ + b.num_, a.den_);
    return normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatF operator-(const RatF& a, const RatF& b) { return a + (-b); }

  friend RatF operator*(const RatF& a, const RatF& b) {
    if (a.is_zero() || b.is_zero()) return RatF();
    if (a.den_.is_one() && b.den_.is_one()) return RatF(a.num_ * b.num_);
    // Cross-cancel so the product stays reduced without a full gcd.
    UPoly g1 = UPoly::gcd(a.num_, b.den_);
    UPoly g2 = UPoly::gcd(b.num_, a.den_);
    UPoly an = g1.is_one() ? a.num_ : UPoly::divmod(a.num_, g1).first;
    UPoly bd = g1.is_one() ? b.den_ : UPoly::divmod(b.den_, g1).first;
    UPoly bn = g2.is_one() ? b.num_ : UPoly::divmod(b.num_, g2).first;
    UPoly ad = g2.is_one() ? a.den_ : UPoly::divmod(a.den_, g2).first;
    RatF r;
    r.num_ = an * bn;
    r.den_ = ad * bd;
    BigRat l = r.den_.lead();
    if (l != 1) {
      r.num_ = r.num_.scaled(1 / l);
      r.den_ = r.den_.scaled(1 / l);
    }
    return r;
  }

  RatF inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero polynomial");
    return normalize(den_, num_);
  }
  friend RatF operator/(const RatF& a, const RatF& b) { return a * b.inverse(); }

  RatF& operator+=(const RatF& o) { return *this = *this + o; }
  RatF& operator-=(const RatF& o) { return *this = *this - o; }
  RatF& operator*=(const RatF& o) { return *this = *this * o; }
  RatF& operator/=(const RatF& o) { return *this = *this / o; }

  RatF pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatF r(1), b = *this;
    while (e > 0) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  friend bool operator==(const RatF& a, const RatF& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatF& a, const RatF& b) { return !(a == b); }

  /// Complex evaluation at u = u0.
  cplx eval(cplx u0) const {
    cplx d = den_.eval(u0);
    if (std::abs(d) < 1e-12) throw ArithmeticError("pole at evaluation point");
    return num_.eval(u0) / d;
  }

  /// Exact value at the real point u = 1/sqrt(q), for q a perfect square or
  /// when only even powers of u occur. Uses u^2 = u2.
  BigRat eval_u2(const BigRat& u2) const {
    auto even_part = [&](const UPoly& p) {
      BigRat acc = 0, pw = 1;
      for (int i = 0; i <= p.degree(); i += 2) {
        acc += p.coef(i) * pw;
        pw *= u2;
      }
      for (int i = 1; i <= p.degree(); i += 2)
        if (sgn(p.coef(i)) != 0) throw UsageError("eval_u2: odd power of u present");
      return acc;
    };
    BigRat d = even_part(den_);
    if (sgn(d) == 0) throw ArithmeticError("pole at evaluation point");
    return even_part(num_) / d;
  }

  /// Canonical "(num)/(den)" string; parse_ratf reads it back.
  std::string to_string() const {
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  UPoly num_, den_;
};

inline RatF ratf_normalize(UPoly num, UPoly den) {
  return RatF::normalize(std::move(num), std::move(den));
}

inline cplx ratf_eval(const RatF& f, cplx u0) { return f.eval(u0); }

/// The numeric value of u for a real q > 1 (positive branch).
inline double u_of_q(double q) { return 1.0 / std::sqrt(q); }

namespace detail {

class RatFParser {
 public:
  explicit RatFParser(std::string_view s) : s_(s) {}

  RatF parse() {
    RatF r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& m) {
    throw UsageError("cannot parse expression '" + std::string(s_) + "': " + m);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) { ++i_; return true; }
    return false;
  }
  RatF expr() {
    RatF r = term();
    for (;;) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else return r;
    }
  }
  RatF term() {
    RatF r = unary();
    for (;;) {
      if (eat('*')) r *= unary();
      else if (eat('/')) r /= unary();
      else return r;
    }
  }
  RatF unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    RatF b = base();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected integer exponent");
      int e = std::stoi(std::string(s_.substr(st, i_ - st)));
      b = b.pow(neg ? -e : e);
    }
    return b;
  }
  RatF base() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      RatF r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == 'u') { ++i_; return RatF::u(); }
    if (c == 'q') { ++i_; return RatF::q(); }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return RatF(BigRat(BigInt(std::string(s_.substr(st, i_ - st)))));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Parse an arithmetic expression in u and q (q = u^-2), e.g. "-u^2",
/// "1/q", "(1 - u^4)/(1 + u^2)". Integers, + - * / ^ and parentheses.
inline RatF parse_ratf(std::string_view s) { return detail::RatFParser(s).parse(); }

}  // namespace padicsph
