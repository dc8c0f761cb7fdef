#pragma once
// Finite-precision arithmetic in Q_p and in the unramified quadratic
// extension Q_p(sqrt(eps)), and 2n x 2n matrices over the latter.
//
// A Padic stores p^val * unit with the unit known modulo p^rel (capped
// relative precision, rel <= N). rel == 0 means "zero modulo p^val"; the
// exact zero has val == kInf.

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "exact_field.hpp"

namespace padicsph {

namespace detail {

inline const BigInt& p_power(int p, int k) {
  static thread_local std::map<int, std::vector<BigInt>> cache;
  auto& v = cache[p];
  if (v.empty()) v.push_back(1);
  while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * p);
  return v[k];
}

/// v_p(a) for a != 0; a is divided in place.
inline int strip(BigInt& a, int p) {
  int k = 0;
  while (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
    mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), p);
    ++k;
  }
  return k;
}

inline BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

class Padic {
 public:
  static constexpr int kInf = INT_MAX / 4;

  Padic() = default;
  Padic(int p, int N) : p_(p), N_(N) {}

  static Padic exact_zero(int p, int N) { return Padic(p, N); }
  /// Zero known modulo p^absprec.
  static Padic zero_mod(int p, int N, int absprec) {
    Padic r(p, N);
    r.val_ = absprec;
    return r;
  }
  static Padic from_rational(const BigRat& x, int p, int N) {
    Padic r(p, N);
    if (sgn(x) == 0) return r;
    BigInt num = x.get_num(), den = x.get_den();
    r.val_ = detail::strip(num, p) - detail::strip(den, p);
    r.rel_ = N;
    const BigInt& m = detail::p_power(p, N);
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    r.unit_ = detail::mod(num * inv, m);
    return r;
  }
  static Padic from_int(long c, int p, int N) { return from_rational(BigRat(c), p, N); }
  /// p^val * unit with unit a p-adic unit known mod p^rel.
  static Padic from_parts(int p, int N, int val, const BigInt& unit, int rel) {
    Padic r(p, N);
    r.val_ = val;
    r.rel_ = std::min(rel, N);
    r.unit_ = detail::mod(unit, detail::p_power(p, r.rel_));
    if (r.rel_ > 0 && mpz_divisible_ui_p(r.unit_.get_mpz_t(), p))
      throw UsageError("from_parts: unit divisible by p");
    return r;
  }

  int prime() const { return p_; }
  int cap() const { return N_; }
  bool is_exact_zero() const { return rel_ == 0 && val_ == kInf; }
  /// Indistinguishable from zero at the available precision.
  bool is_zero() const { return rel_ == 0; }
  int absprec() const { return val_ + rel_; }
  int relprec() const { return rel_; }
  const BigInt& unit() const { return unit_; }

  int valuation() const {
    if (is_zero()) throw PrecisionError("valuation of a p-adic zero: precision exhausted");
    return val_;
  }
  /// Valuation if known, else a lower bound (the absolute precision).
  int valuation_bound() const { return val_; }

  Padic operator-() const {
    Padic r = *this;
    if (rel_ > 0) r.unit_ = detail::mod(-unit_, detail::p_power(p_, rel_));
    return r;
  }

  friend Padic operator+(const Padic& x, const Padic& y) {
    check(x, y);
    if (x.is_exact_zero()) return y;
    if (y.is_exact_zero()) return x;
    const int ap = std::min(x.absprec(), y.absprec());
    const int mv = std::min(x.val_, y.val_);
    if (mv >= ap) return zero_mod(x.p_, x.N_, ap);
    BigInt s = 0;
    if (!x.is_zero()) s += x.unit_ * detail::p_power(x.p_, x.val_ - mv);
    if (!y.is_zero()) s += y.unit_ * detail::p_power(x.p_, y.val_ - mv);
    s = detail::mod(s, detail::p_power(x.p_, ap - mv));
    if (s == 0) return zero_mod(x.p_, x.N_, ap);
    const int k = detail::strip(s, x.p_);
    return from_parts(x.p_, x.N_, mv + k, s, ap - mv - k);
  }
  friend Padic operator-(const Padic& x, const Padic& y) { return x + (-y); }

  friend Padic operator*(const Padic& x, const Padic& y) {
    check(x, y);
    if (x.is_exact_zero() || y.is_exact_zero()) return exact_zero(x.p_, x.N_);
    if (x.is_zero() || y.is_zero()) return zero_mod(x.p_, x.N_, x.val_ + y.val_);
    const int r = std::min(x.rel_, y.rel_);
    Padic z(x.p_, x.N_);
    z.val_ = x.val_ + y.val_;
    z.rel_ = r;
    z.unit_ = detail::mod(x.unit_ * y.unit_, detail::p_power(x.p_, r));
    return z;
  }

  Padic inverse() const {
    if (is_zero()) throw PrecisionError("division by a p-adic zero");
    Padic z(p_, N_);
    z.val_ = -val_;
    z.rel_ = rel_;
    mpz_invert(z.unit_.get_mpz_t(), unit_.get_mpz_t(), detail::p_power(p_, rel_).get_mpz_t());
    return z;
  }
  friend Padic operator/(const Padic& x, const Padic& y) { return x * y.inverse(); }

  Padic& operator+=(const Padic& o) { return *this = *this + o; }
  Padic& operator-=(const Padic& o) { return *this = *this - o; }
  Padic& operator*=(const Padic& o) { return *this = *this * o; }

  /// Leading digit of the unit, in [1, p).
  long leading_digit() const {
    if (is_zero()) throw PrecisionError("leading digit of a p-adic zero");
    return mpz_fdiv_ui(unit_.get_mpz_t(), p_);
  }

  /// A rational representative: p^val times the balanced unit residue.
  BigRat to_rational() const {
    if (is_zero()) return 0;
    const BigInt& m = detail::p_power(p_, rel_);
    BigInt u = unit_;
    if (2 * u > m) u -= m;
    BigRat r(u);
    if (val_ >= 0) r *= BigRat(detail::p_power(p_, val_));
    else r /= BigRat(detail::p_power(p_, -val_));
    r.canonicalize();
    return r;
  }

  /// Square root of a unit square for odd p (Newton iteration).
  Padic sqrt() const {
    if (p_ == 2) throw UsageError("sqrt implemented for odd p only");
    if (is_exact_zero()) return *this;
    if (val_ % 2 != 0) throw ArithmeticError("odd valuation: not a square");
    const long a0 = leading_digit();
    long r0 = 0;
    for (long t = 1; t < p_; ++t)
      if (t * t % p_ == a0) { r0 = t; break; }
    if (r0 == 0) throw ArithmeticError("not a square modulo p");
    const BigInt& m = detail::p_power(p_, rel_);
    BigInt r = r0, two_inv, rinv;
    mpz_invert(two_inv.get_mpz_t(), BigInt(2).get_mpz_t(), m.get_mpz_t());
    for (int prec = 1; prec < rel_; prec *= 2) {
      mpz_invert(rinv.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
      r = detail::mod((r + unit_ * rinv) * two_inv, m);
    }
    return from_parts(p_, N_, val_ / 2, r, rel_);
  }

 private:
  static void check(const Padic& x, const Padic& y) {
    if (x.p_ != y.p_) throw UsageError("p-adic operands over different primes");
  }
  int p_ = 0;
  int N_ = 0;
  int val_ = kInf;
  int rel_ = 0;
  BigInt unit_ = 0;
};

/// Q_p with working precision N and the unramified extension Q_p(sqrt(eps)).
struct ExtField {
  int p;
  int N;
  long eps;

  /// eps is the least positive non-residue for odd p and -3 for p = 2.
  static ExtField make(int p, int N = 32) {
    if (!detail::is_prime(p)) throw UsageError("p must be prime");
    if (p >= 65536) throw UsageError("p must be below 65536");
    if (N < 4) throw UsageError("precision must be at least 4 digits");
    if (p == 2) return {p, N, -3};
    for (long e = 2; e < p; ++e) {
      bool square = false;
      for (long t = 1; t < p && !square; ++t) square = (t * t % p == e);
      if (!square) return {p, N, e};
    }
    throw UsageError("no non-residue found");
  }
  /// v_p(2).
  int v2() const { return p == 2 ? 1 : 0; }
  Padic rat(const BigRat& x) const { return Padic::from_rational(x, p, N); }
  Padic integer(long c) const { return Padic::from_int(c, p, N); }
};

/// a + b sqrt(eps) in Q_p(sqrt(eps)).
class ExtScalar {
 public:
  ExtScalar() = default;
  ExtScalar(const ExtField& F, Padic a, Padic b) : a_(std::move(a)), b_(std::move(b)), eps_(F.eps) {}

  static ExtScalar zero(const ExtField& F) {
    return {F, Padic::exact_zero(F.p, F.N), Padic::exact_zero(F.p, F.N)};
  }
  static ExtScalar rational(const ExtField& F, const BigRat& a, const BigRat& b = 0) {
    return {F, F.rat(a), F.rat(b)};
  }
  static ExtScalar integer(const ExtField& F, long a) { return rational(F, BigRat(a)); }
  static ExtScalar sqrt_eps(const ExtField& F) { return rational(F, 0, 1); }
  /// p^k.
  static ExtScalar pi_pow(const ExtField& F, int k) {
    return {F, Padic::from_parts(F.p, F.N, k, 1, F.N), Padic::exact_zero(F.p, F.N)};
  }

  const Padic& re() const { return a_; }
  const Padic& im() const { return b_; }
  int prime() const { return a_.prime(); }

  ExtScalar conj() const { return with(a_, -b_); }
  /// a^2 - eps b^2.
  Padic norm() const { return a_ * a_ - eps_padic() * b_ * b_; }

  friend ExtScalar operator+(const ExtScalar& x, const ExtScalar& y) { return x.with(x.a_ + y.a_, x.b_ + y.b_); }
  friend ExtScalar operator-(const ExtScalar& x, const ExtScalar& y) { return x.with(x.a_ - y.a_, x.b_ - y.b_); }
  ExtScalar operator-() const { return with(-a_, -b_); }
  friend ExtScalar operator*(const ExtScalar& x, const ExtScalar& y) {
    return x.with(x.a_ * y.a_ + x.eps_padic() * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
  }
  ExtScalar scaled(const Padic& s) const { return with(a_ * s, b_ * s); }
  ExtScalar inverse() const {
    const Padic ninv = norm().inverse();
    return conj().scaled(ninv);
  }
  friend ExtScalar operator/(const ExtScalar& x, const ExtScalar& y) { return x * y.inverse(); }
  ExtScalar& operator+=(const ExtScalar& o) { return *this = *this + o; }
  ExtScalar& operator-=(const ExtScalar& o) { return *this = *this - o; }
  ExtScalar& operator*=(const ExtScalar& o) { return *this = *this * o; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  int absprec() const { return std::min(a_.absprec(), b_.absprec()); }

  /// Valuation in the extension (normalized so v(p) = 1), if determined.
  std::optional<int> valuation() const {
    if (prime() == 2) {
      // Coordinates may carry a factor 1/2 here; use v(x) = v(N(x))/2.
      const Padic n = norm();
      if (n.is_zero()) return std::nullopt;
      return n.valuation() / 2;
    }
    const int ap = absprec();
    int v = Padic::kInf;
    if (!a_.is_zero()) v = std::min(v, a_.valuation());
    if (!b_.is_zero()) v = std::min(v, b_.valuation());
    if (v >= ap) return std::nullopt;
    return v;
  }
  int valuation_or_throw() const {
    auto v = valuation();
    if (!v) throw PrecisionError("entry indistinguishable from zero: precision exhausted");
    return *v;
  }
  bool is_integral() const {
    if (is_zero()) return absprec() >= 0;
    return valuation_or_throw() >= 0;
  }

 private:
  ExtScalar with(Padic a, Padic b) const {
    ExtScalar r;
    r.a_ = std::move(a);
    r.b_ = std::move(b);
    r.eps_ = eps_;
    return r;
  }
  Padic eps_padic() const { return Padic::from_int(eps_, a_.prime(), a_.cap()); }

  Padic a_, b_;
  long eps_ = 0;
};

/// A 2n x 2n matrix over Q_p(sqrt(eps)).
class UHMatrix {
 public:
  UHMatrix() = default;
  UHMatrix(const ExtField& F, int n) : F_(F), n_(n), e_(4 * n * n, ExtScalar::zero(F)) {}

  static UHMatrix identity(const ExtField& F, int n) {
    UHMatrix r(F, n);
    for (int i = 0; i < 2 * n; ++i) r(i, i) = ExtScalar::integer(F, 1);
    return r;
  }
  /// The anti-diagonal j_{2n}.
  static UHMatrix j(const ExtField& F, int n) {
    UHMatrix r(F, n);
    for (int i = 0; i < 2 * n; ++i) r(i, 2 * n - 1 - i) = ExtScalar::integer(F, 1);
    return r;
  }

  const ExtField& field() const { return F_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  ExtScalar& operator()(int i, int k) { return e_[i * 2 * n_ + k]; }
  const ExtScalar& operator()(int i, int k) const { return e_[i * 2 * n_ + k]; }

  /// Conjugate transpose.
  UHMatrix star() const {
    UHMatrix r(F_, n_);
    for (int i = 0; i < dim(); ++i)
      for (int k = 0; k < dim(); ++k) r(k, i) = (*this)(i, k).conj();
    return r;
  }

  friend UHMatrix operator*(const UHMatrix& x, const UHMatrix& y) {
    if (x.n_ != y.n_) throw UsageError("matrix size mismatch");
    UHMatrix r(x.F_, x.n_);
    const int d = x.dim();
    for (int i = 0; i < d; ++i)
      for (int l = 0; l < d; ++l) {
        const ExtScalar& a = x(i, l);
        if (a.re().is_exact_zero() && a.im().is_exact_zero()) continue;
        for (int k = 0; k < d; ++k) {
          const ExtScalar& b = y(l, k);
          if (b.re().is_exact_zero() && b.im().is_exact_zero()) continue;
          r(i, k) += a * b;
        }
      }
    return r;
  }
  friend UHMatrix operator+(const UHMatrix& x, const UHMatrix& y) {
    UHMatrix r = x;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += y.e_[i];
    return r;
  }
  friend UHMatrix operator-(const UHMatrix& x, const UHMatrix& y) {
    UHMatrix r = x;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= y.e_[i];
    return r;
  }

  /// g . x = g x g*.
  UHMatrix acted_on_by(const UHMatrix& g) const { return g * *this * g.star(); }

 private:
  ExtField F_{};
  int n_ = 0;
  std::vector<ExtScalar> e_;
};

/// Coefficients c_0 = 1, c_1, ..., c_m of det(t - A) = sum c_k t^(m-k), by
/// Berkowitz's division-free algorithm. A is given as a dense m x m array.
inline std::vector<ExtScalar> berkowitz(const std::vector<std::vector<ExtScalar>>& A, const ExtField& F) {
  const int m = static_cast<int>(A.size());
  std::vector<ExtScalar> C{ExtScalar::integer(F, 1)};
  for (int r = 0; r < m; ++r) {
    // Leading r x r block M, column S = A[0..r-1][r], row R = A[r][0..r-1].
    std::vector<ExtScalar> T(r + 2, ExtScalar::zero(F));
    T[0] = ExtScalar::integer(F, 1);
    T[1] = -A[r][r];
    std::vector<ExtScalar> v(r);
    for (int i = 0; i < r; ++i) v[i] = A[i][r];
    for (int k = 2; k <= r + 1; ++k) {
      ExtScalar s = ExtScalar::zero(F);
      for (int i = 0; i < r; ++i) s += A[r][i] * v[i];
      T[k] = -s;
      std::vector<ExtScalar> w(r, ExtScalar::zero(F));
      for (int i = 0; i < r; ++i)
        for (int l = 0; l < r; ++l) w[i] += A[i][l] * v[l];
      v = std::move(w);
    }
    std::vector<ExtScalar> next(r + 2, ExtScalar::zero(F));
    for (int i = 0; i < r + 2; ++i)
      for (int l = 0; l <= std::min(i, r); ++l) next[i] += T[i - l] * C[l];
    C = std::move(next);
  }
  return C;
}

inline std::vector<std::vector<ExtScalar>> to_dense(const UHMatrix& x) {
  std::vector<std::vector<ExtScalar>> A(x.dim(), std::vector<ExtScalar>(x.dim()));
  for (int i = 0; i < x.dim(); ++i)
    for (int k = 0; k < x.dim(); ++k) A[i][k] = x(i, k);
  return A;
}

/// Characteristic polynomial of x, leading coefficient first.
inline std::vector<ExtScalar> char_poly(const UHMatrix& x) { return berkowitz(to_dense(x), x.field()); }

namespace detail {

enum class ZeroTest { Zero, Nonzero, Indeterminate };

/// Zero to the available precision, provably nonzero, or fewer than
/// min_digits absolute digits left.
inline ZeroTest zero_test(const ExtScalar& d, int min_digits) {
  if (!d.is_zero()) return ZeroTest::Nonzero;
  return d.absprec() < min_digits ? ZeroTest::Indeterminate : ZeroTest::Zero;
}

/// Folds tests: any Nonzero gives false, else any Indeterminate throws.
class ZeroFold {
 public:
  explicit ZeroFold(int min_digits) : d_(min_digits) {}
  void add(const ExtScalar& x) {
    switch (zero_test(x, d_)) {
      case ZeroTest::Nonzero: nonzero_ = true; break;
      case ZeroTest::Indeterminate: indet_ = true; break;
      case ZeroTest::Zero: break;
    }
  }
  bool result() const {
    if (nonzero_) return false;
    if (indet_) throw PrecisionError("indeterminate: precision exhausted");
    return true;
  }

 private:
  int d_;
  bool nonzero_ = false, indet_ = false;
};

inline void require_digits(const UHMatrix& x, int min_digits) {
  for (int i = 0; i < x.dim(); ++i)
    for (int k = 0; k < x.dim(); ++k) {
      const ExtScalar& e = x(i, k);
      for (const Padic* c : {&e.re(), &e.im()})
        if (!c->is_zero() && c->relprec() < min_digits)
          throw PrecisionError("indeterminate: entry has fewer than " + std::to_string(min_digits) +
                               " digits");
    }
}

inline bool all_zero(const UHMatrix& d, int min_digits) {
  ZeroFold f(min_digits);
  for (int i = 0; i < d.dim(); ++i)
    for (int k = 0; k < d.dim(); ++k) f.add(d(i, k));
  return f.result();
}

}  // namespace detail

constexpr int kMinDigits = 4;

/// x* j x = j.
inline bool is_in_G(const UHMatrix& x, int min_digits = kMinDigits) {
  detail::require_digits(x, min_digits);
  const UHMatrix J = UHMatrix::j(x.field(), x.n());
  return detail::all_zero(x.star() * J * x - J, min_digits);
}

/// x in G and x* = x.
inline bool is_in_Xtilde(const UHMatrix& x, int min_digits = kMinDigits) {
  if (!is_in_G(x, min_digits)) return false;
  return detail::all_zero(x.star() - x, min_digits);
}

/// x in Xtilde and the characteristic polynomial of x j equals (t^2 - 1)^n.
inline bool is_in_X(const UHMatrix& x, int min_digits = kMinDigits) {
  if (!is_in_Xtilde(x, min_digits)) return false;
  const ExtField& F = x.field();
  const int n = x.n();
  const auto c = char_poly(x * UHMatrix::j(F, n));
  // (t^2 - 1)^n = sum_k binom(n,k) (-1)^k t^(2n-2k).
  BigInt binom = 1;
  detail::ZeroFold fold(min_digits);
  for (int i = 0; i <= 2 * n; ++i) {
    ExtScalar want = ExtScalar::zero(F);
    if (i % 2 == 0) {
      const int k = i / 2;
      want = ExtScalar::rational(F, BigRat(k % 2 ? -binom : binom));
      binom = binom * (n - k) / (k + 1);
    }
    fold.add(c[i] - want);
  }
  return fold.result();
}

/// Entries lie in the valuation ring.
inline bool is_integral(const UHMatrix& x) {
  for (int i = 0; i < x.dim(); ++i)
    for (int k = 0; k < x.dim(); ++k)
      if (!x(i, k).is_integral()) return false;
  return true;
}

/// x in K = G cap GL_2n(O).
inline bool is_in_K(const UHMatrix& x, int min_digits = kMinDigits) {
  return is_integral(x) && is_in_G(x, min_digits);
}

}  // namespace padicsph
