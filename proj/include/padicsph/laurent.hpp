#pragma once
// Sparse Laurent polynomials in X_1..X_n over Q(u). X^mu stands for
// q^(-<mu,z>), so the monomial attached to q^(<alpha,z>) is X^(-alpha).

#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact_field.hpp"

namespace padicsph {

using Exponent = std::vector<int>;

inline Exponent exp_add(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Exponent exp_sub(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Exponent exp_neg(Exponent a) {
  for (auto& x : a) x = -x;
  return a;
}
inline Exponent exp_scale(Exponent a, int k) {
  for (auto& x : a) x *= k;
  return a;
}

/// Finitely supported map Z^n -> Q(u). Terms are kept in lexicographic
/// exponent order; zero coefficients are never stored.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, RatF>;

  explicit LaurentPoly(int n = 0) : n_(n) {}

  static LaurentPoly constant(int n, const RatF& c) {
    LaurentPoly r(n);
    r.add_term(Exponent(n, 0), c);
    return r;
  }
  static LaurentPoly monomial(const Exponent& e, const RatF& c = RatF(1)) {
    LaurentPoly r(static_cast<int>(e.size()));
    r.add_term(e, c);
    return r;
  }
  /// The binomial a + b X^e.
  static LaurentPoly binomial(const RatF& a, const RatF& b, const Exponent& e) {
    LaurentPoly r = constant(static_cast<int>(e.size()), a);
    r.add_term(e, b);
    return r;
  }

  int rank() const { return n_; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  RatF coef(const Exponent& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? RatF() : it->second;
  }

  void add_term(const Exponent& e, const RatF& c) {
    if (static_cast<int>(e.size()) != n_) throw UsageError("rank mismatch");
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_rank(o);
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_rank(o);
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_rank(b);
    LaurentPoly r(a.n_);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) r.add_term(exp_add(ea, eb), ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const RatF& s) const {
    if (s.is_zero()) return LaurentPoly(n_);
    LaurentPoly r = *this;
    for (auto& [e, c] : r.t_) c *= s;
    return r;
  }
  /// Multiply by X^e.
  LaurentPoly shifted(const Exponent& e) const {
    LaurentPoly r(n_);
    for (const auto& [f, c] : t_) r.t_.emplace(exp_add(f, e), c);
    return r;
  }

  LaurentPoly pow(int k) const {
    LaurentPoly r = constant(n_, 1);
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }

  /// Apply an injective map on exponents, keeping coefficients.
  LaurentPoly map_exponents(const std::function<Exponent(const Exponent&)>& f) const {
    LaurentPoly r(n_);
    for (const auto& [e, c] : t_) r.add_term(f(e), c);
    return r;
  }

  /// X_i -> s_i X_i with s_i = +-1 (the twists z -> z + pi*sqrt(-1)/log q).
  LaurentPoly sign_twisted(const std::vector<int>& s) const {
    LaurentPoly r(n_);
    for (const auto& [e, c] : t_) {
      int sg = 1;
      for (int i = 0; i < n_; ++i)
        if (s[i] < 0 && (e[i] & 1)) sg = -sg;
      r.t_.emplace(e, sg > 0 ? c : -c);
    }
    return r;
  }

  /// f(X) -> f(X^2).
  LaurentPoly squared_variables() const {
    LaurentPoly r(n_);
    for (const auto& [e, c] : t_) r.t_.emplace(exp_scale(e, 2), c);
    return r;
  }

  /// Coordinatewise min and max exponent of the support.
  std::pair<Exponent, Exponent> bounding_box() const {
    Exponent lo(n_, 0), hi(n_, 0);
    bool first = true;
    for (const auto& [e, c] : t_) {
      for (int i = 0; i < n_; ++i) {
        if (first || e[i] < lo[i]) lo[i] = e[i];
        if (first || e[i] > hi[i]) hi[i] = e[i];
      }
      first = false;
    }
    return {lo, hi};
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.n_ == b.n_ && a.t_ == b.t_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : t_) {
      if (!s.empty()) s += " + ";
      s += c.to_string();
      for (int i = 0; i < n_; ++i)
        if (e[i] != 0) s += "*X" + std::to_string(i + 1) + "^" + std::to_string(e[i]);
    }
    return s;
  }

 private:
  void check_rank(const LaurentPoly& o) const {
    if (o.n_ != n_) throw UsageError("rank mismatch");
  }
  int n_;
  TermMap t_;
};

/// Exact quotient f/d by leading-term elimination in lex order. Throws
/// IdentityError("inexact division") if d does not divide f.
inline LaurentPoly laurent_div_exact(const LaurentPoly& f, const LaurentPoly& d) {
  if (d.is_zero()) throw ArithmeticError("division by zero polynomial");
  if (f.rank() != d.rank()) throw UsageError("rank mismatch");
  const int n = f.rank();
  LaurentPoly g(n);
  if (f.is_zero()) return g;
  // Any quotient monomial lies in [min f - min d, max f - max d] per variable.
  auto [flo, fhi] = f.bounding_box();
  auto [dlo, dhi] = d.bounding_box();
  Exponent glo = exp_sub(flo, dlo), ghi = exp_sub(fhi, dhi);
  for (int i = 0; i < n; ++i)
    if (glo[i] > ghi[i]) throw IdentityError("inexact division");

  const auto& [dlead_e, dlead_c] = *d.terms().rbegin();
  const RatF dinv = dlead_c.inverse();
  const bool unit_lead = dlead_c.is_one();
  LaurentPoly r = f;
  while (!r.is_zero()) {
    const auto [re, rc] = *r.terms().rbegin();  // copy: r is mutated below
    Exponent qe = exp_sub(re, dlead_e);
    for (int i = 0; i < n; ++i)
      if (qe[i] < glo[i] || qe[i] > ghi[i]) throw IdentityError("inexact division");
    RatF qc = unit_lead ? rc : rc * dinv;
    g.add_term(qe, qc);
    for (const auto& [de, dc] : d.terms()) r.add_term(exp_add(qe, de), -(qc * dc));
  }
  return g;
}

/// A Laurent polynomial with complex coefficients (q specialized), for
/// fast evaluation on grids.
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(int n) : n_(n), lo_(n, 0), hi_(n, 0) {}

  NumericPoly(const LaurentPoly& p, cplx u0) : n_(p.rank()) {
    for (const auto& [e, c] : p.terms()) add_term(e, c.eval(u0));
  }

  int rank() const { return n_; }
  const std::vector<std::pair<Exponent, cplx>>& terms() const { return t_; }

  void add_term(const Exponent& e, cplx c) {
    if (t_.empty()) { lo_ = e; hi_ = e; }
    for (int i = 0; i < n_; ++i) {
      lo_[i] = std::min(lo_[i], e[i]);
      hi_[i] = std::max(hi_[i], e[i]);
    }
    t_.emplace_back(e, c);
  }

  NumericPoly scaled(cplx s) const {
    NumericPoly r = *this;
    for (auto& [e, c] : r.t_) c *= s;
    return r;
  }

  /// Evaluate at the point X (entries nonzero).
  cplx eval(const std::vector<cplx>& X) const {
    if (t_.empty()) return 0;
    std::vector<std::vector<cplx>> pw(n_);
    for (int i = 0; i < n_; ++i) {
      const int span = hi_[i] - lo_[i] + 1;
      pw[i].resize(span);
      cplx base = std::pow(X[i], lo_[i]);
      for (int k = 0; k < span; ++k) {
        pw[i][k] = base;
        base *= X[i];
      }
    }
    cplx acc = 0;
    for (const auto& [e, c] : t_) {
      cplx m = c;
      for (int i = 0; i < n_; ++i) m *= pw[i][e[i] - lo_[i]];
      acc += m;
    }
    return acc;
  }

 private:
  int n_ = 0;
  Exponent lo_, hi_;
  std::vector<std::pair<Exponent, cplx>> t_;
};

}  // namespace padicsph
