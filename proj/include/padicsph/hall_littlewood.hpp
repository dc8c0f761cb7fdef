#pragma once
// Hall-Littlewood polynomials of type C_n with independent short/long root
// parameters, Poincare polynomials of stabilizers, monomial expansion and
// the decomposition over R_0 = C[X^(+-2)]^W.

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "threads.hpp"
#include "weyl.hpp"

namespace padicsph {

struct HLParams {
  RatF t_s;
  RatF t_l;

  /// t_s = -q^-1, t_l = q^-1.
  static HLParams standard() { return {-RatF::u_pow(2), RatF::u_pow(2)}; }

  const RatF& t_of(const Exponent& root) const {
    return RootSystemC::is_long(root) ? t_l : t_s;
  }
};

/// Formal product of (a + b X^exp)^mult; mult < 0 marks a denominator factor.
class FactorSystem {
 public:
  struct Factor {
    RatF a;
    RatF b;
    Exponent exp;
    int mult;
  };

  FactorSystem() = default;
  explicit FactorSystem(int n) : n_(n) {}

  int rank() const { return n_; }
  const std::vector<Factor>& factors() const { return f_; }
  void add(const RatF& a, const RatF& b, const Exponent& e, int mult) {
    f_.push_back({a, b, e, mult});
  }

  FactorSystem inverse() const {
    FactorSystem r = *this;
    for (auto& f : r.f_) f.mult = -f.mult;
    return r;
  }
  friend FactorSystem operator*(FactorSystem a, const FactorSystem& b) {
    a.f_.insert(a.f_.end(), b.f_.begin(), b.f_.end());
    return a;
  }
  /// The system z -> sigma(z) substituted, i.e. each exp mapped by sigma^-1.
  /// With X^mu = q^(-<mu,z>), f(sigma z) has X^mu replaced by X^(sigma^-1 mu).
  FactorSystem composed_with(const WeylElement& sigma) const {
    FactorSystem r = *this;
    WeylElement inv = sigma.inverse();
    for (auto& f : r.f_) f.exp = inv.act(f.exp);
    return r;
  }

  /// Product of the factors with positive multiplicity.
  LaurentPoly numerator() const { return part(+1); }
  /// Product of the factors with negative multiplicity (as positive powers).
  LaurentPoly denominator() const { return part(-1); }

  cplx eval(const std::vector<cplx>& X, cplx u0, double pole_tol = 1e-10) const {
    cplx acc = 1;
    for (const auto& f : f_) {
      cplx m = 1;
      for (int i = 0; i < n_; ++i) m *= std::pow(X[i], f.exp[i]);
      cplx v = f.a.eval(u0) + f.b.eval(u0) * m;
      if (f.mult < 0 && std::abs(v) < pole_tol) throw ArithmeticError("pole at evaluation point");
      acc *= std::pow(v, f.mult);
    }
    return acc;
  }

  /// Exact equality of the represented rational functions (cross-multiplied).
  friend bool equal_as_functions(const FactorSystem& a, const FactorSystem& b) {
    return a.numerator() * b.denominator() == b.numerator() * a.denominator();
  }

 private:
  LaurentPoly part(int sign) const {
    LaurentPoly r = LaurentPoly::constant(n_, 1);
    for (const auto& f : f_) {
      if (f.mult * sign <= 0) continue;
      LaurentPoly b = LaurentPoly::binomial(f.a, f.b, f.exp);
      for (int k = 0; k < std::abs(f.mult); ++k) r *= b;
    }
    return r;
  }
  int n_ = 0;
  std::vector<Factor> f_;
};

/// c(z) = prod_{alpha > 0} (1 - t_alpha X^-alpha) / (1 - X^-alpha).
inline FactorSystem c_function(int n, const HLParams& t) {
  FactorSystem c(n);
  for (const auto& a : RootSystemC(n).positive()) {
    c.add(1, -t.t_of(a), exp_neg(a), 1);
    c.add(1, -1, exp_neg(a), -1);
  }
  return c;
}

/// w_m(t) = prod_{i=1}^m (1 - t^i).
inline RatF w_poly(int m, const RatF& t) {
  RatF r = 1;
  for (int i = 1; i <= m; ++i) r *= RatF(1) - t.pow(i);
  return r;
}

/// Poincare polynomial of the stabilizer of lambda:
/// prod_{k >= 1} W_{A_{m_k - 1}}(t_s) * W_{C_{m_0}}(t_s, t_l).
inline RatF poincare_W(const Partition& lambda, const HLParams& t) {
  auto type_a = [&](int m) {
    // prod_{i=1}^{m-1} (1 + t + ... + t^i)
    RatF r = 1;
    for (int i = 1; i < m; ++i) {
      RatF s = 0;
      for (int k = 0; k <= i; ++k) s += t.t_s.pow(k);
      r *= s;
    }
    return r;
  };
  auto type_c = [&](int m) {
    RatF r = 1;
    for (int i = 0; i < m; ++i) {
      RatF s = 0;
      for (int k = 0; k <= i; ++k) s += t.t_s.pow(k);
      r *= (RatF(1) + t.t_s.pow(i) * t.t_l) * s;
    }
    return r;
  };
  RatF r = type_c(lambda.multiplicity(0));
  std::vector<int> seen;
  for (int k : lambda.parts())
    if (k > 0 && std::find(seen.begin(), seen.end(), k) == seen.end()) {
      seen.push_back(k);
      r *= type_a(lambda.multiplicity(k));
    }
  return r;
}

namespace detail {

/// Sum over W of sign * X^-m_sigma * sigma(f), where sigma(D) = sign X^m_sigma D
/// for D = prod_{alpha>0} (1 - X^-alpha).
inline LaurentPoly weyl_cleared_sum(const LaurentPoly& f) {
  const int n = f.rank();
  const auto W = weyl_group(n);
  const auto pos = RootSystemC(n).positive();
  auto parts = parallel_map<LaurentPoly>(W.size(), [&](std::size_t i) {
    const auto& s = W[i];
    Exponent m(n, 0);
    int sign = 1;
    for (const auto& a : pos) {
      Exponent sa = s.act(a);
      if (!RootSystemC::is_positive(sa)) {
        sign = -sign;
        m = exp_sub(m, sa);
      }
    }
    LaurentPoly t = weyl_act(s, f).shifted(exp_neg(m));
    return sign > 0 ? t : -t;
  });
  LaurentPoly total(n);
  for (const auto& p : parts) total += p;
  return total;
}

/// Divide by D = prod_{alpha>0} (1 - X^-alpha) one binomial at a time.
inline LaurentPoly divide_by_weyl_denominator(LaurentPoly f) {
  const int n = f.rank();
  for (const auto& a : RootSystemC(n).positive())
    f = laurent_div_exact(f, LaurentPoly::binomial(1, -1, exp_neg(a)));
  return f;
}

}  // namespace detail

/// Q_lambda = sum_{sigma in W} sigma(X^lambda c(z)), computed exactly by
/// clearing the Weyl denominator.
inline LaurentPoly q_polynomial(const Partition& lambda, const HLParams& t) {
  const int n = lambda.rank();
  LaurentPoly num = LaurentPoly::monomial(lambda.parts());
  for (const auto& a : RootSystemC(n).positive())
    num *= LaurentPoly::binomial(1, -t.t_of(a), exp_neg(a));
  LaurentPoly cleared = detail::weyl_cleared_sum(num);
  try {
    return detail::divide_by_weyl_denominator(std::move(cleared));
  } catch (const IdentityError&) {
    throw IdentityError("denominator does not divide: identity violated");
  }
}

/// P_lambda = Q_lambda / W_lambda(t).
inline LaurentPoly hl_p(const Partition& lambda, const HLParams& t) {
  return q_polynomial(lambda, t).scaled(poincare_W(lambda, t).inverse());
}

/// Coefficients c_lambda in f = sum c_lambda m_lambda.
inline std::map<Partition, RatF> expand_in_monomials(const LaurentPoly& f) {
  if (!is_weyl_invariant(f)) throw UsageError("input is not W-invariant");
  std::map<Partition, RatF> out;
  for (const auto& [e, c] : f.terms())
    if (is_dominant(e)) out.emplace(Partition(e), c);
  return out;
}

/// The 2^n dominant weights whose fundamental coordinates are all 0 or 1.
inline std::vector<Partition> r0_basis_weights(int n) {
  std::vector<Partition> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = mask >> i & 1;
    out.emplace_back(from_fundamental_coords(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Unique g_mu in R_0 with f = sum_mu g_mu P_mu, mu over r0_basis_weights.
inline std::map<Partition, LaurentPoly> decompose_R0(const LaurentPoly& f, const HLParams& t) {
  if (!is_weyl_invariant(f)) throw UsageError("input is not W-invariant");
  const int n = f.rank();
  std::map<Partition, LaurentPoly> g, P;
  for (const auto& mu : r0_basis_weights(n)) {
    g.emplace(mu, LaurentPoly(n));
    P.emplace(mu, hl_p(mu, t));
  }
  const Exponent rho = RootSystemC(n).rho();
  auto height = [&](const Exponent& e) {
    return std::inner_product(e.begin(), e.end(), rho.begin(), 0);
  };
  LaurentPoly r = f;
  while (!r.is_zero()) {
    // A dominant exponent of maximal rho-height is maximal for dominance.
    const Exponent* best = nullptr;
    for (const auto& [e, c] : r.terms())
      if (is_dominant(e) && (!best || height(e) >= height(*best))) best = &e;
    if (!best) throw IdentityError("W-invariant remainder without dominant term");
    const Exponent kappa = *best;
    const RatF coef = r.coef(kappa);
    auto c = fundamental_coords(kappa);
    std::vector<int> par(n), half(n);
    for (int i = 0; i < n; ++i) {
      par[i] = c[i] & 1;
      half[i] = c[i] >> 1;
    }
    Partition mu(from_fundamental_coords(par));
    LaurentPoly h = monomial_symmetric(from_fundamental_coords(half)).squared_variables().scaled(coef);
    r -= h * P.at(mu);
    g.at(mu) += h;
  }
  return g;
}

/// sum_mu g_mu P_mu.
inline LaurentPoly reassemble_R0(const std::map<Partition, LaurentPoly>& g, const HLParams& t) {
  int n = g.begin()->first.rank();
  LaurentPoly r(n);
  for (const auto& [mu, gm] : g)
    if (!gm.is_zero()) r += gm * hl_p(mu, t);
  return r;
}

}  // namespace padicsph
