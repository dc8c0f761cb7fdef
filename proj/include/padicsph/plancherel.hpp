#pragma once
// Harmonic analysis on the torus: the measure d(mu), tensor-grid quadrature,
// inner products of Hall-Littlewood polynomials, orbit volumes, and the
// spherical Fourier transform with its Plancherel and inversion identities.

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "errors.hpp"
#include "hall_littlewood.hpp"
#include "spherical.hpp"
#include "threads.hpp"

namespace padicsph {

/// Uniform tensor grid on the torus: theta in {2 pi k / N}^n, X_j = e^{-i theta_j}.
struct QuadratureGrid {
  int n;
  int N;
  double q;
};

/// Deterministic pairwise summation.
inline cplx pairwise_sum(const cplx* v, std::size_t len) {
  if (len <= 8) {
    cplx s = 0;
    for (std::size_t i = 0; i < len; ++i) s += v[i];
    return s;
  }
  std::size_t h = len / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, len - h);
}
inline cplx pairwise_sum(const std::vector<cplx>& v) { return pairwise_sum(v.data(), v.size()); }

/// The constant (1/(n! 2^n)) w_n(-q^-1)^2 / (1 + q^-1)^n.
inline double mu_constant(int n, double q) {
  double w = 1, fact = 1;
  for (int i = 1; i <= n; ++i) {
    w *= 1 - std::pow(-1 / q, i);
    fact *= i;
  }
  return w * w / (std::pow(1 + 1 / q, n) * fact * std::pow(2.0, n));
}

/// Density of d(mu) against the normalized Haar measure at X_j = e^{-i theta_j}:
/// the constant times 1/|c(z)|^2 = c^-1(X) c^-1(X^-1).
inline double mu_density(const std::vector<double>& theta, int n, double q) {
  if (q <= 1) throw UsageError("q must exceed 1");
  static thread_local std::map<int, FactorSystem> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, c_function(n, HLParams::standard()).inverse()).first;
  const FactorSystem& cinv = it->second;
  std::vector<cplx> X(n), Xi(n);
  for (int j = 0; j < n; ++j) {
    X[j] = std::polar(1.0, -theta[j]);
    Xi[j] = 1.0 / X[j];
  }
  const cplx u0(u_of_q(q), 0);
  return mu_constant(n, q) * (cinv.eval(X, u0) * cinv.eval(Xi, u0)).real();
}

/// Precomputed nodes and weights (density times N^-n).
class Quadrature {
 public:
  explicit Quadrature(const QuadratureGrid& g) : g_(g) {
    if (g.n < 1 || g.N < 1) throw UsageError("grid needs n >= 1 and N >= 1");
    std::size_t total = 1;
    for (int i = 0; i < g.n; ++i) total *= static_cast<std::size_t>(g.N);
    nodes_.resize(total);
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t r = k;
      nodes_[k].resize(g.n);
      for (int j = g.n - 1; j >= 0; --j) {
        nodes_[k][j] = 2 * M_PI * static_cast<double>(r % g.N) / g.N;
        r /= g.N;
      }
    }
    const double w = 1.0 / static_cast<double>(total);
    weights_ = map_nodes<double>([&](std::size_t k) { return w * mu_density(nodes_[k], g.n, g.q); });
  }

  const QuadratureGrid& grid() const { return g_; }
  std::size_t size() const { return nodes_.size(); }
  std::vector<cplx> point(std::size_t k) const {
    std::vector<cplx> X(g_.n);
    for (int j = 0; j < g_.n; ++j) X[j] = std::polar(1.0, -nodes_[k][j]);
    return X;
  }
  cplx u0() const { return cplx(u_of_q(g_.q), 0); }

  /// Values of p at every node.
  std::vector<cplx> values(const NumericPoly& p) const {
    return map_nodes<cplx>([&](std::size_t k) { return p.eval(point(k)); });
  }
  std::vector<cplx> values(const LaurentPoly& p) const { return values(NumericPoly(p, u0())); }

  /// sum_k w_k f_k g_k-bar.
  cplx inner(const std::vector<cplx>& f, const std::vector<cplx>& g) const {
    std::vector<cplx> t(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) t[k] = weights_[k] * f[k] * std::conj(g[k]);
    return pairwise_sum(t);
  }
  /// sum_k w_k f_k g_k (no conjugation).
  cplx pairing(const std::vector<cplx>& f, const std::vector<cplx>& g) const {
    std::vector<cplx> t(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) t[k] = weights_[k] * f[k] * g[k];
    return pairwise_sum(t);
  }
  double mass() const {
    std::vector<cplx> t(weights_.begin(), weights_.end());
    return pairwise_sum(t).real();
  }

 private:
  template <class R, class F>
  std::vector<R> map_nodes(F f) const {
    constexpr std::size_t chunk = 1024;
    const std::size_t chunks = (nodes_.size() + chunk - 1) / chunk;
    auto parts = parallel_map<std::vector<R>>(chunks, [&](std::size_t c) {
      std::vector<R> out;
      for (std::size_t k = c * chunk; k < std::min(nodes_.size(), (c + 1) * chunk); ++k)
        out.push_back(f(k));
      return out;
    });
    std::vector<R> all;
    all.reserve(nodes_.size());
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    return all;
  }

  QuadratureGrid g_;
  std::vector<std::vector<double>> nodes_;
  std::vector<double> weights_;
};

/// <P, Q> = integral of P conj(Q) d(mu) by the trapezoid rule.
inline cplx inner_product(const LaurentPoly& P, const LaurentPoly& Q, const Quadrature& quad) {
  return quad.inner(quad.values(P), quad.values(Q));
}
inline cplx inner_product(const LaurentPoly& P, const LaurentPoly& Q, const QuadratureGrid& g) {
  return inner_product(P, Q, Quadrature(g));
}

/// v(K x_lambda) = c_lambda^-2 w_lambda^-1.
inline RatF volume(const Partition& lambda) {
  return (c_lambda(lambda).pow(2) * w_lambda(lambda)).inverse();
}

/// phi = sum phi(lambda) ch_lambda, finitely supported.
struct SchwartzElement {
  int n = 0;
  std::map<Partition, cplx> support;
};

/// Exact transform for rational coefficients: sum phi(lambda) c_lambda^-1 P_lambda.
inline LaurentPoly fourier_exact(const std::map<Partition, RatF>& phi, int n) {
  LaurentPoly F(n);
  for (const auto& [l, c] : phi)
    if (!c.is_zero()) F += hl_p(l, HLParams::standard()).scaled(c * c_lambda(l).inverse());
  return F;
}

/// F(phi) = sum phi(lambda) v(lambda) Psi(x_lambda) = sum phi(lambda) c_lambda^-1 P_lambda,
/// specialized at q.
inline NumericPoly fourier(const SchwartzElement& phi, double q) {
  const cplx u0(u_of_q(q), 0);
  std::map<Exponent, cplx> acc;
  for (const auto& [l, c] : phi.support) {
    if (c == cplx(0)) continue;
    const cplx s = c * c_lambda(l).inverse().eval(u0);
    const LaurentPoly P = hl_p(l, HLParams::standard());
    for (const auto& [e, coef] : P.terms()) acc[e] += s * coef.eval(u0);
  }
  NumericPoly F(phi.n);
  for (const auto& [e, c] : acc) F.add_term(e, c);
  return F;
}

/// lhs = sum phi(lambda) conj(psi(lambda)) v(lambda); rhs = <F(phi), F(psi)>.
inline std::pair<cplx, cplx> plancherel_check(const SchwartzElement& phi, const SchwartzElement& psi,
                                              const Quadrature& quad) {
  const cplx u0 = quad.u0();
  cplx lhs = 0;
  for (const auto& [l, c] : phi.support) {
    auto it = psi.support.find(l);
    if (it != psi.support.end()) lhs += c * std::conj(it->second) * volume(l).eval(u0);
  }
  const double q = quad.grid().q;
  cplx rhs = quad.inner(quad.values(fourier(phi, q)), quad.values(fourier(psi, q)));
  return {lhs, rhs};
}

/// phi(lambda) = integral of F(phi) Psi(x_lambda) d(mu), for each requested lambda.
inline std::map<Partition, cplx> invert(const NumericPoly& F, const std::vector<Partition>& lambdas,
                                        const Quadrature& quad) {
  std::map<Partition, cplx> out;
  const auto Fv = quad.values(F);
  for (const auto& l : lambdas) {
    if (l.rank() != quad.grid().n) throw UsageError("rank mismatch");
    out[l] = quad.pairing(Fv, quad.values(spherical_data(l).psi_poly));
  }
  return out;
}

}  // namespace padicsph
