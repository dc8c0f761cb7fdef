#pragma once
// Explicit spherical functions on the space of unitary hermitian matrices:
// constants c_lambda and w_lambda, the factor systems G, G_1, gamma,
// Gamma_sigma, the explicit formula for omega(x_lambda; z), the rank-one
// closed form, and the twisted Psi basis.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "errors.hpp"
#include "hall_littlewood.hpp"
#include "laurent.hpp"
#include "weyl.hpp"

namespace padicsph {

/// A point z in C^n together with a numeric q > 1.
struct EvalPoint {
  std::vector<cplx> z;
  double q;

  /// s_i = -z_i + z_{i+1} (i < n), s_n = -z_n.
  static EvalPoint from_s(const std::vector<cplx>& s, double q) {
    const int n = static_cast<int>(s.size());
    EvalPoint p{std::vector<cplx>(n), q};
    if (n == 0) return p;
    p.z[n - 1] = -s[n - 1];
    for (int i = n - 2; i >= 0; --i) p.z[i] = p.z[i + 1] - s[i];
    return p;
  }
  std::vector<cplx> to_s() const {
    const int n = static_cast<int>(z.size());
    std::vector<cplx> s(n);
    for (int i = 0; i + 1 < n; ++i) s[i] = -z[i] + z[i + 1];
    if (n) s[n - 1] = -z[n - 1];
    return s;
  }
  /// X_i = q^(-z_i).
  std::vector<cplx> X() const {
    std::vector<cplx> x(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) x[i] = std::exp(-z[i] * std::log(q));
    return x;
  }
  cplx u0() const { return cplx(u_of_q(q), 0); }
};

/// epsilon = (-1, ..., -1, -1/2) + (pi i / log q) (1, ..., 1), in s-coordinates.
inline std::vector<cplx> epsilon_shift(int n, double q) {
  const double im = M_PI / std::log(q);
  std::vector<cplx> e(n, cplx(-1, im));
  if (n) e[n - 1] = cplx(-0.5, im);
  return e;
}

/// c_lambda = (-1)^{sum lambda_i (n-i+1)} q^{-sum lambda_i (n-i+1/2)}.
inline RatF c_lambda(const Partition& lambda) {
  const int n = lambda.rank();
  int sign_exp = 0, u_exp = 0;
  for (int i = 1; i <= n; ++i) {
    sign_exp += lambda[i - 1] * (n - i + 1);
    u_exp += 2 * lambda[i - 1] * (n - i) + lambda[i - 1];
  }
  RatF r = RatF::u_pow(u_exp);
  return sign_exp % 2 ? -r : r;
}

/// w_lambda = w~_lambda(t) / w_n(t)^2 at t = -q^-1, with
/// w~_lambda = w_{m_0}^2 prod_{l >= 1} w_{m_l}.
inline RatF w_lambda(const Partition& lambda) {
  const int n = lambda.rank();
  const RatF t = -RatF::u_pow(2);
  RatF wt = w_poly(lambda.multiplicity(0), t).pow(2);
  std::vector<int> seen;
  for (int k : lambda.parts())
    if (k > 0 && std::find(seen.begin(), seen.end(), k) == seen.end()) {
      seen.push_back(k);
      wt *= w_poly(lambda.multiplicity(k), t);
    }
  return wt / w_poly(n, t).pow(2);
}

/// G(z) = prod_{alpha short > 0} (1 + q^<alpha,z>) / (1 - q^{<alpha,z> - 1}).
inline FactorSystem g_factor(int n) {
  FactorSystem g(n);
  for (const auto& a : RootSystemC(n).short_pos) {
    g.add(1, 1, exp_neg(a), 1);
    g.add(1, -RatF::u_pow(2), exp_neg(a), -1);
  }
  return g;
}

/// G_1(z): the factors of G(z) for the roots e_i - e_j only.
inline FactorSystem g1_factor(int n) {
  FactorSystem g(n);
  for (const auto& a : RootSystemC(n).short_pos) {
    if (std::count(a.begin(), a.end(), -1) == 0) continue;
    g.add(1, 1, exp_neg(a), 1);
    g.add(1, -RatF::u_pow(2), exp_neg(a), -1);
  }
  return g;
}

/// gamma(z) = prod_short (1 - q^{2<alpha,z> - 2}) / (1 - q^{2<alpha,z>})
///          * prod_long (1 - q^{<alpha,z> - 1}) / (1 - q^<alpha,z>).
inline FactorSystem gamma_factor(int n) {
  RootSystemC R(n);
  FactorSystem g(n);
  for (const auto& a : R.short_pos) {
    g.add(1, -RatF::u_pow(4), exp_scale(a, -2), 1);
    g.add(1, -1, exp_scale(a, -2), -1);
  }
  for (const auto& a : R.long_pos) {
    g.add(1, -RatF::u_pow(2), exp_neg(a), 1);
    g.add(1, -1, exp_neg(a), -1);
  }
  return g;
}

/// Short positive roots alpha with sigma(alpha) negative.
inline std::vector<Exponent> short_roots_flipped(const WeylElement& sigma) {
  std::vector<Exponent> out;
  for (const auto& a : RootSystemC(sigma.rank()).short_pos)
    if (!RootSystemC::is_positive(sigma.act(a))) out.push_back(a);
  return out;
}

/// Gamma_sigma(z) = prod (1 - q^{<alpha,z>-1}) / (q^<alpha,z> - q^-1) over
/// short alpha > 0 with -sigma(alpha) > 0.
inline FactorSystem Gamma_sigma(const WeylElement& sigma) {
  FactorSystem g(sigma.rank());
  for (const auto& a : short_roots_flipped(sigma)) {
    g.add(1, -RatF::u_pow(2), exp_neg(a), 1);
    g.add(-RatF::u_pow(2), 1, exp_neg(a), -1);
  }
  return g;
}

/// Q = w_{2n}(-q^-1) / (1 - q^-2)^n.
inline RatF hecke_constant_Q(int n) {
  return w_poly(2 * n, -RatF::u_pow(2)) / (RatF(1) - RatF::u_pow(4)).pow(n);
}

/// omega(x_lambda; z) = prefactor * G(z)^-1 * poly, poly = c_lambda Q_lambda.
struct OmegaExplicit {
  RatF prefactor;
  FactorSystem G_inverse;
  LaurentPoly poly;

  cplx eval(const EvalPoint& p) const {
    const auto X = p.X();
    const cplx u0 = p.u0();
    return prefactor.eval(u0) * G_inverse.eval(X, u0) * NumericPoly(poly, u0).eval(X);
  }
};

inline OmegaExplicit omega_explicit(const Partition& lambda) {
  const int n = lambda.rank();
  return {hecke_constant_Q(n).inverse(), g_factor(n).inverse(),
          q_polynomial(lambda, HLParams::standard()).scaled(c_lambda(lambda))};
}

/// Rank-one closed form in Y = q^s, kept as two unsimplified fractions:
/// prefactor * (Y^l (1 - q^-1 Y^-2)/(1 - Y^-2) + Y^-l (1 - q^-1 Y^2)/(1 - Y^2)).
struct OmegaN1Closed {
  int ell;
  RatF prefactor;
  LaurentPoly num1, den1, num2, den2;

  /// Numerator and denominator of the sum over a common denominator.
  std::pair<LaurentPoly, LaurentPoly> combined() const {
    return {(num1 * den2 + num2 * den1).scaled(prefactor), den1 * den2};
  }
  /// The sum as a Laurent polynomial in Y (it is one).
  LaurentPoly as_polynomial() const {
    auto [n, d] = combined();
    return laurent_div_exact(n, d);
  }
  cplx eval(cplx Y, cplx u0) const {
    std::vector<cplx> y{Y};
    const cplx d1 = NumericPoly(den1, u0).eval(y), d2 = NumericPoly(den2, u0).eval(y);
    if (std::abs(d1) < 1e-10 || std::abs(d2) < 1e-10)
      throw ArithmeticError("pole at evaluation point");
    return prefactor.eval(u0) *
           (NumericPoly(num1, u0).eval(y) / d1 + NumericPoly(num2, u0).eval(y) / d2);
  }
};

inline OmegaN1Closed omega_n1_closed(int ell) {
  if (ell < 0) throw UsageError("ell must be non-negative");
  const RatF u2 = RatF::u_pow(2);
  RatF pre = RatF::u_pow(ell) / (RatF(1) + u2);
  if (ell % 2) pre = -pre;
  auto mono = [](int k, const RatF& c) { return LaurentPoly::monomial({k}, c); };
  OmegaN1Closed w{ell, pre, LaurentPoly(1), LaurentPoly(1), LaurentPoly(1), LaurentPoly(1)};
  w.num1 = mono(ell, 1) - mono(ell - 2, u2);
  w.den1 = mono(0, 1) - mono(-2, 1);
  w.num2 = mono(-ell, 1) - mono(2 - ell, u2);
  w.den2 = mono(0, 1) - mono(2, 1);
  return w;
}

/// The closed form with Y replaced by X^k (k = +1 or -1).
inline OmegaN1Closed substitute_y(OmegaN1Closed w, int k) {
  auto sub = [k](const LaurentPoly& p) {
    return p.map_exponents([k](const Exponent& e) { return Exponent{k * e[0]}; });
  };
  w.num1 = sub(w.num1); w.den1 = sub(w.den1);
  w.num2 = sub(w.num2); w.den2 = sub(w.den2);
  return w;
}

/// Exact identity check: omega_explicit((ell)) equals the closed form under
/// Y = X^k, by cross-multiplication in Q(u)[X^+-1].
inline bool n1_oracle_matches(int ell, int k) {
  const OmegaExplicit om = omega_explicit(Partition({ell}));
  const OmegaN1Closed cl = substitute_y(omega_n1_closed(ell), k);
  auto [cn, cd] = cl.combined();
  LaurentPoly lhs = om.poly.scaled(om.prefactor) * om.G_inverse.numerator() * cd;
  LaurentPoly rhs = cn * om.G_inverse.denominator();
  return lhs == rhs;
}

struct SphericalData {
  Partition lambda;
  int n;
  RatF c_lambda;
  RatF w_lambda;
  LaurentPoly psi_poly;  // c_lambda w_lambda P_lambda
};

inline SphericalData spherical_data(const Partition& lambda) {
  RatF c = c_lambda(lambda), w = w_lambda(lambda);
  return {lambda, lambda.rank(), c, w, hl_p(lambda, HLParams::standard()).scaled(c * w)};
}

/// Psi(x; z) = omega(x; z) / omega(1; z) computed from the explicit formula,
/// i.e. c_lambda Q_lambda / Q_0 as an element of R.
inline LaurentPoly psi_from_omega(const Partition& lambda) {
  const int n = lambda.rank();
  LaurentPoly q0 = q_polynomial(Partition::zero(n), HLParams::standard());
  const RatF q0c = q0.coef(Exponent(n, 0));
  if (q0.size() != 1 || q0c.is_zero()) throw IdentityError("Q_0 is not constant");
  return omega_explicit(lambda).poly.scaled(q0c.inverse());
}

/// M[u][lambda] = Psi(x_lambda; z0 + u) for the 2^n twists
/// u in {0, pi i / log q}^n, realized as X_i -> -X_i.
inline std::vector<std::vector<cplx>> twisted_psi_basis(const std::vector<Partition>& grid,
                                                        const EvalPoint& z0) {
  if (grid.empty()) throw UsageError("empty grid");
  const int n = grid.front().rank();
  if (static_cast<int>(grid.size()) != (1 << n))
    throw UsageError("grid must contain 2^n partitions");
  const cplx u0 = z0.u0();
  std::vector<NumericPoly> psi;
  for (const auto& l : grid) psi.emplace_back(spherical_data(l).psi_poly, u0);
  const auto X = z0.X();
  std::vector<std::vector<cplx>> M(1 << n, std::vector<cplx>(grid.size()));
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<cplx> Xt = X;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) Xt[i] = -Xt[i];
    for (std::size_t j = 0; j < grid.size(); ++j) M[mask][j] = psi[j].eval(Xt);
  }
  return M;
}

/// Numeric rank via singular values relative to the largest.
inline int numeric_rank(const std::vector<std::vector<cplx>>& M, double rel_tol = 1e-9) {
  if (M.empty()) return 0;
  Eigen::MatrixXcd A(M.size(), M[0].size());
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M[i].size(); ++j) A(i, j) = M[i][j];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i) r += s(i) > rel_tol * s(0);
  return r;
}

}  // namespace padicsph
