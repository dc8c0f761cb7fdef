#pragma once
// K-orbits on X: representatives x_lambda, E_n(mu), x_{lambda,mu}; the
// Cartan invariant from Smith valuations and by constructive reduction;
// the G-orbit class; a sampler for K; and the rank-one orbital oracle.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "padic.hpp"
#include "spherical.hpp"
#include "weyl.hpp"

namespace padicsph {

// Indices are 0-based; pair i couples coordinates i and 2n-1-i.
namespace kgen {

/// Swap pairs i and k (simultaneously i <-> k and i' <-> k').
inline UHMatrix pair_swap(const ExtField& F, int n, int i, int k) {
  const int d = 2 * n;
  std::vector<int> perm(d);
  for (int r = 0; r < d; ++r) perm[r] = r;
  std::swap(perm[i], perm[k]);
  std::swap(perm[d - 1 - i], perm[d - 1 - k]);
  UHMatrix g(F, n);
  for (int r = 0; r < d; ++r) g(perm[r], r) = ExtScalar::integer(F, 1);
  return g;
}

/// Swap coordinates i and 2n-1-i.
inline UHMatrix pair_flip(const ExtField& F, int n, int i) {
  const int d = 2 * n;
  UHMatrix g = UHMatrix::identity(F, n);
  g(i, i) = g(d - 1 - i, d - 1 - i) = ExtScalar::zero(F);
  g(i, d - 1 - i) = g(d - 1 - i, i) = ExtScalar::integer(F, 1);
  return g;
}

/// 1 + c E_{ik} - c* E_{k'i'} for i, k in the same half, i != k: the
/// element Diag(h, j h*^-1 j) with h elementary.
inline UHMatrix elementary(const ExtField& F, int n, int i, int k, const ExtScalar& c) {
  const int d = 2 * n;
  if ((i < n) != (k < n) || i == k) throw UsageError("elementary: indices must differ and share a half");
  UHMatrix g = UHMatrix::identity(F, n);
  g(i, k) = c;
  g(d - 1 - k, d - 1 - i) = -c.conj();
  return g;
}

/// Diag(a_i) on coordinate i and conj(a_i)^-1 on i', for units a_i.
inline UHMatrix torus(const ExtField& F, int n, const std::vector<ExtScalar>& a) {
  const int d = 2 * n;
  UHMatrix g(F, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = a[i];
    g(d - 1 - i, d - 1 - i) = a[i].conj().inverse();
  }
  return g;
}

/// [[1, a j], [0, 1]] for a skew-hermitian n x n matrix a (row-major).
inline UHMatrix unipotent(const ExtField& F, int n, const std::vector<ExtScalar>& a) {
  UHMatrix g = UHMatrix::identity(F, n);
  for (int t = 0; t < n; ++t)
    for (int c = 0; c < n; ++c) g(t, n + c) = a[t * n + (n - 1 - c)];
  return g;
}

}  // namespace kgen

/// x_lambda = Diag(p^l1, ..., p^ln, p^-ln, ..., p^-l1).
inline UHMatrix make_x_lambda(const Partition& lambda, const ExtField& F) {
  const int n = lambda.rank();
  if (n < 1) throw UsageError("x_lambda needs n >= 1");
  UHMatrix x(F, n);
  for (int i = 0; i < n; ++i) {
    x(i, i) = ExtScalar::pi_pow(F, lambda[i]);
    x(2 * n - 1 - i, 2 * n - 1 - i) = ExtScalar::pi_pow(F, -lambda[i]);
  }
  return x;
}

/// E_n(mu) for residue characteristic 2, v(2) >= mu_1 >= ... >= mu_n >= 1.
inline UHMatrix make_E(const Partition& mu, const ExtField& F) {
  const int n = mu.rank();
  if (F.p != 2) throw UsageError("E_n(mu) requires residue characteristic 2");
  if (n < 1) throw UsageError("E_n(mu) needs n >= 1");
  for (int m : mu.parts())
    if (m < 1 || m > F.v2()) throw UsageError("E_n(mu) requires 1 <= mu_i <= v(2)");
  UHMatrix x(F, n);
  const ExtScalar one_minus_eps = ExtScalar::integer(F, 1 - F.eps);
  const ExtScalar se = ExtScalar::sqrt_eps(F);
  for (int i = 0; i < n; ++i) {
    const int m = mu[n - 1 - i];
    const int ip = 2 * n - 1 - i;
    x(i, i) = ExtScalar::pi_pow(F, -m) * one_minus_eps;
    x(i, ip) = -se;
    x(ip, i) = se;
    x(ip, ip) = ExtScalar::pi_pow(F, m);
  }
  return x;
}

/// Block diagonal Diag(D_r(lambda), E_{n-r}(mu), D_r(-lambda)), r = rank of lambda.
inline UHMatrix make_x_lambda_mu(const Partition& lambda, const Partition& mu, const ExtField& F) {
  const int r = lambda.rank(), n = r + mu.rank();
  if (n < 1) throw UsageError("x_{lambda,mu} needs n >= 1");
  if (mu.rank() == 0) return make_x_lambda(lambda, F);
  const UHMatrix E = make_E(mu, F);
  if (r == 0) return E;
  UHMatrix x(F, n);
  for (int i = 0; i < r; ++i) {
    x(i, i) = ExtScalar::pi_pow(F, lambda[i]);
    x(2 * n - 1 - i, 2 * n - 1 - i) = ExtScalar::pi_pow(F, -lambda[i]);
  }
  for (int a = 0; a < E.dim(); ++a)
    for (int b = 0; b < E.dim(); ++b) x(r + a, r + b) = E(a, b);
  return x;
}

/// -min v(x_ij).
inline int ell_of(const UHMatrix& x) {
  std::optional<int> m;
  int floor = Padic::kInf;  // least absolute precision among zero entries
  for (int i = 0; i < x.dim(); ++i)
    for (int k = 0; k < x.dim(); ++k) {
      const auto v = x(i, k).valuation();
      if (v) m = m ? std::min(*m, *v) : *v;
      else floor = std::min(floor, x(i, k).absprec());
    }
  if (!m) throw UsageError("ell_of: zero matrix");
  if (floor <= *m) throw PrecisionError("ell_of: minimal entry indeterminate");
  return -*m;
}

/// Elementary-divisor valuations over O_{k'} by Smith reduction with
/// minimal-valuation pivots (ties in row-major order).
inline std::vector<int> smith_valuations(const UHMatrix& x) {
  const int d = x.dim();
  auto A = to_dense(x);
  std::vector<int> out;
  for (int s = 0; s < d; ++s) {
    int bi = -1, bk = -1, bv = 0, floor = Padic::kInf;
    for (int i = s; i < d; ++i)
      for (int k = s; k < d; ++k) {
        const auto v = A[i][k].valuation();
        if (!v) { floor = std::min(floor, A[i][k].absprec()); continue; }
        if (bi < 0 || *v < bv) { bi = i; bk = k; bv = *v; }
      }
    if (bi < 0 || floor <= bv) throw PrecisionError("Smith reduction: precision exhausted");
    std::swap(A[s], A[bi]);
    for (auto& row : A) std::swap(row[s], row[bk]);
    const ExtScalar inv = A[s][s].inverse();
    for (int i = s + 1; i < d; ++i) {
      const ExtScalar m = A[i][s] * inv;
      for (int k = s; k < d; ++k) A[i][k] -= m * A[s][k];
    }
    for (int k = s + 1; k < d; ++k) {
      const ExtScalar m = A[s][k] * inv;
      for (int i = s; i < d; ++i) A[i][k] -= A[i][s] * m;
    }
    out.push_back(bv);
  }
  return out;
}

namespace detail {

inline void require_odd_in_X(const UHMatrix& x, const char* what) {
  if (x.field().p == 2) throw UsageError(std::string(what) + " requires odd residue characteristic");
  if (!is_in_X(x)) throw UsageError(std::string(what) + ": input is not in X");
}

}  // namespace detail

/// lambda with x in K . x_lambda, read off the elementary divisors {+-lambda_i}.
inline Partition cartan_lambda(const UHMatrix& x) {
  detail::require_odd_in_X(x, "cartan_lambda");
  auto v = smith_valuations(x);
  std::sort(v.begin(), v.end(), std::greater<>());
  const int n = x.n();
  for (int i = 0; i < 2 * n; ++i)
    if (v[i] != -v[2 * n - 1 - i]) throw IdentityError("Smith valuations are not symmetric");
  return Partition(std::vector<int>(v.begin(), v.begin() + n));
}

struct CartanReduction {
  Partition lambda;
  UHMatrix k;          // k . x = x_lambda
  int residual_digits;  // k x k* - x_lambda vanishes modulo p^residual_digits
  std::string trace;    // one letter per step: A split, B off-diagonal, C/D anti-diagonal
};

namespace detail {

/// beta in O_{k'} with N(beta) = w, for a unit w of O_k (odd p).
inline ExtScalar norm_preimage(const Padic& w, const ExtField& F) {
  const long w0 = w.leading_digit();
  for (long b = 0; b < F.p; ++b) {
    const long t = ((w0 + F.eps * b * b) % F.p + F.p) % F.p;
    if (t == 0) continue;
    bool square = false;
    for (long r = 1; r < F.p && !square; ++r) square = (r * r % F.p == t);
    if (!square) continue;
    const Padic bb = F.integer(b);
    const Padic a = (w + F.integer(F.eps) * bb * bb).sqrt();
    return ExtScalar(F, a, bb);
  }
  throw IdentityError("no norm preimage for a unit");
}

class Reducer {
 public:
  explicit Reducer(const UHMatrix& x)
      : F_(x.field()), n_(x.n()), d_(x.dim()), y_(x), k_(UHMatrix::identity(F_, n_)) {}

  CartanReduction run(const UHMatrix& x0) {
    std::vector<int> lam;
    for (int s = 0; s < n_; ++s) lam.push_back(stage(s));
    Partition lambda(lam);
    const UHMatrix target = make_x_lambda(lambda, F_);
    const UHMatrix diff = x0.acted_on_by(k_) - target;
    int digits = Padic::kInf;
    for (int i = 0; i < d_; ++i)
      for (int k = 0; k < d_; ++k) {
        if (!diff(i, k).is_zero()) throw IdentityError("reduction residual k.x - x_lambda is nonzero");
        digits = std::min(digits, diff(i, k).absprec());
      }
    if (!is_in_K(k_)) throw IdentityError("accumulated reducing element is not in K");
    return {lambda, k_, digits, trace_};
  }

 private:
  void apply(const UHMatrix& g) {
    y_ = y_.acted_on_by(g);
    k_ = g * k_;
  }
  int mirror(int i) const { return d_ - 1 - i; }
  int pair_of(int i) const { return std::min(i, mirror(i)); }

  /// Reduce the active block (pairs s..n-1) until a 1 x 1 block splits off;
  /// returns its exponent.
  int stage(int s) {
    for (int iter = 0; iter < 12; ++iter) {
      const int lo = s, hi = mirror(s);  // active coordinates lo..hi
      // Minimal valuation over the active block.
      int mv = Padic::kInf, floor = Padic::kInf;
      for (int i = lo; i <= hi; ++i)
        for (int k = lo; k <= hi; ++k) {
          const auto v = y_(i, k).valuation();
          if (v) mv = std::min(mv, *v);
          else floor = std::min(floor, y_(i, k).absprec());
        }
      if (mv == Padic::kInf || floor <= mv) throw PrecisionError("Cartan reduction: precision exhausted");
      auto minimal = [&](int i, int k) {
        const auto v = y_(i, k).valuation();
        return v && *v == mv;
      };
      // Diagonal minimal entry.
      for (int i = lo; i <= hi; ++i)
        if (minimal(i, i)) {
          trace_ += 'A';
          return split(s, i, -mv);
        }
      // Minimal entry off the diagonal and the anti-diagonal.
      for (int i = lo; i <= hi; ++i)
        for (int k = lo; k <= hi; ++k)
          if (k != i && k != mirror(i) && minimal(i, k)) {
            trace_ += 'B';
            make_diagonal_minimal(i, k, mv);
            goto next;
          }
      {
        // All minimal entries on the anti-diagonal.
        int some_min = -1, some_non = -1;
        for (int i = lo; i < n_; ++i) (minimal(i, mirror(i)) ? some_min : some_non) = i;
        if (some_non >= 0) {
          trace_ += 'C';
          apply(kgen::pair_swap(F_, n_, s, some_min));
          apply(kgen::pair_swap(F_, n_, s + 1, some_non == s ? some_min : some_non));
          apply(kgen::elementary(F_, n_, s, s + 1, ExtScalar::integer(F_, 1)));
        } else {
          trace_ += 'D';
          if (mv != 0) throw IdentityError("anti-diagonal minimal entries with ell != 0");
          int a = -1, b = -1;
          for (int i = lo; i < n_ && b < 0; ++i)
            for (int k = i + 1; k < n_ && b < 0; ++k)
              if ((y_(i, mirror(i)) - y_(k, mirror(k))).valuation().value_or(Padic::kInf) == 0) {
                a = i;
                b = k;
              }
          if (a < 0) throw IdentityError("x is congruent to +-j modulo p: not in X");
          apply(kgen::pair_swap(F_, n_, s, a));
          apply(kgen::pair_swap(F_, n_, s + 1, b == s ? a : b));
          UHMatrix g = UHMatrix::identity(F_, n_);
          g(mirror(s) - 1, s) = ExtScalar::integer(F_, 1);
          g(mirror(s), s + 1) = ExtScalar::integer(F_, -1);
          apply(g);
        }
      }
    next:;
    }
    throw IdentityError("Cartan reduction did not converge");
  }

  /// Minimal xi at (i, k), no diagonal minimum: bring k into the half of i,
  /// then add c * row k to row i with c = p^ell xi, making (i, i) minimal.
  void make_diagonal_minimal(int i, int k, int mv) {
    if ((i < n_) != (k < n_)) {
      apply(kgen::pair_flip(F_, n_, pair_of(k)));
      k = mirror(k);
    }
    const ExtScalar c = ExtScalar::pi_pow(F_, -mv) * y_(i, k);
    apply(kgen::elementary(F_, n_, i, k, c));
  }

  /// Move the minimal diagonal entry to coordinate 2n-1-s, normalize it to
  /// p^-ell and clear its row and column.
  int split(int s, int i, int ell) {
    if (i < n_) {
      apply(kgen::pair_flip(F_, n_, i));
      i = mirror(i);
    }
    if (pair_of(i) != s) apply(kgen::pair_swap(F_, n_, s, pair_of(i)));
    const int P = mirror(s);
    // y(P,P) = p^-ell w with w a unit of O_k.
    const Padic w = y_(P, P).re() * F_.rat(BigRat(detail::p_power(F_.p, ell)));
    const ExtScalar beta = norm_preimage(w, F_);
    UHMatrix g = UHMatrix::identity(F_, n_);
    g(s, s) = beta.conj();
    g(P, P) = beta.inverse();
    apply(g);
    // Clear the rest of row P inside the lower active half.
    const ExtScalar pinv = y_(P, P).inverse();
    for (int r = n_; r < P; ++r)
      if (!y_(r, P).is_zero()) apply(kgen::elementary(F_, n_, r, P, -(y_(r, P) * pinv)));
    // Clear column P in the upper active half with a unipotent [[1, a j], [0, 1]].
    std::vector<ExtScalar> a(n_ * n_, ExtScalar::zero(F_));
    for (int t = s; t < n_; ++t) {
      const ExtScalar want = -(y_(t, P) * pinv);
      if (t == s) {
        a[s * n_ + s] = ExtScalar(F_, Padic::exact_zero(F_.p, F_.N), want.im());
      } else {
        a[t * n_ + s] = want;
        a[s * n_ + t] = -want.conj();
      }
    }
    apply(kgen::unipotent(F_, n_, a));
    // The unitarity relations force the rest of rows s and P.
    ZeroFold fold(1);
    for (int t = s; t <= P; ++t) {
      if (t != s) fold.add(y_(s, t));
      if (t != P) fold.add(y_(P, t));
    }
    fold.add(y_(s, s) - ExtScalar::pi_pow(F_, ell));
    if (!fold.result()) throw IdentityError("unitarity relations violated during reduction");
    return ell;
  }

  ExtField F_;
  int n_, d_;
  UHMatrix y_, k_;
  std::string trace_;
};

}  // namespace detail

/// Constructive reduction to x_lambda, cross-checked against cartan_lambda.
inline CartanReduction cartan_reduce(const UHMatrix& x) {
  detail::require_odd_in_X(x, "cartan_reduce");
  CartanReduction r = detail::Reducer(x).run(x);
  if (r.lambda != cartan_lambda(x)) throw IdentityError("cartan_reduce disagrees with cartan_lambda");
  return r;
}

/// Parity class of the G-orbit: 0 for G . 1, 1 for G . Diag(p, 1, ..., 1, p^-1).
/// Computed from the hermitian form v* j w restricted to the +1-eigenspace of
/// x j: the parity of v(det) is G-invariant, shifted by n v(2) so that x_0 -> 0.
inline int g_orbit_class(const UHMatrix& x) {
  if (!is_in_X(x)) throw UsageError("g_orbit_class: input is not in X");
  const ExtField& F = x.field();
  const int n = x.n(), d = x.dim();
  const UHMatrix M = UHMatrix::identity(F, n) + x * UHMatrix::j(F, n);
  // Pick n independent columns of M by pivoted elimination.
  auto A = to_dense(M);
  std::vector<int> cols;
  std::vector<bool> used_row(d, false);
  for (int c = 0; c < d && static_cast<int>(cols.size()) < n; ++c) {
    int bi = -1, bv = 0;
    for (int i = 0; i < d; ++i) {
      if (used_row[i]) continue;
      const auto v = A[i][c].valuation();
      if (v && (bi < 0 || *v < bv)) { bi = i; bv = *v; }
    }
    if (bi < 0) continue;
    used_row[bi] = true;
    cols.push_back(c);
    const ExtScalar inv = A[bi][c].inverse();
    for (int k = c + 1; k < d; ++k) {
      const ExtScalar m = A[bi][k] * inv;
      for (int i = 0; i < d; ++i) A[i][k] -= A[i][c] * m;
    }
  }
  if (static_cast<int>(cols.size()) != n) throw IdentityError("+1-eigenspace of x j has wrong dimension");
  // H = B* j B.
  std::vector<std::vector<ExtScalar>> H(n, std::vector<ExtScalar>(n, ExtScalar::zero(F)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < d; ++i) H[a][b] += M(i, cols[a]).conj() * M(d - 1 - i, cols[b]);
  // det H by pivoted elimination.
  ExtScalar det = ExtScalar::integer(F, 1);
  for (int s = 0; s < n; ++s) {
    int bi = -1, bv = 0;
    for (int i = s; i < n; ++i) {
      const auto v = H[i][s].valuation();
      if (v && (bi < 0 || *v < bv)) { bi = i; bv = *v; }
    }
    if (bi < 0) throw PrecisionError("g_orbit_class: degenerate form at working precision");
    std::swap(H[s], H[bi]);
    det *= H[s][s];
    const ExtScalar inv = H[s][s].inverse();
    for (int i = s + 1; i < n; ++i) {
      const ExtScalar m = H[i][s] * inv;
      for (int k = s; k < n; ++k) H[i][k] -= m * H[s][k];
    }
  }
  const int v = det.valuation_or_throw() - n * F.v2();
  return ((v % 2) + 2) % 2;
}

namespace detail {

inline ExtScalar random_integral(const ExtField& F, std::mt19937_64& rng) {
  auto digits = [&] {
    BigInt r = 0;
    for (int k = F.N - 1; k >= 0; --k) r = r * F.p + static_cast<long>(rng() % F.p);
    return BigRat(r);
  };
  BigRat a = digits(), b = digits();
  return ExtScalar::rational(F, a, b);
}

inline ExtScalar random_unit(const ExtField& F, std::mt19937_64& rng) {
  for (;;) {
    ExtScalar x = random_integral(F, rng);
    if (x.valuation().value_or(1) == 0) return x;
  }
}

}  // namespace detail

/// Product of word_len random generators of K: torus units, elementary
/// GL_n(O) blocks, unipotents, j_2n, pair flips and pair swaps.
inline UHMatrix random_K(int n, const ExtField& F, int word_len, std::mt19937_64& rng) {
  if (F.p == 2) throw UsageError("random_K requires odd p");
  if (n < 1 || word_len < 0) throw UsageError("random_K needs n >= 1 and word_len >= 0");
  UHMatrix k = UHMatrix::identity(F, n);
  for (int w = 0; w < word_len; ++w) {
    const int kind = static_cast<int>(rng() % 6);
    UHMatrix g;
    switch (kind) {
      case 0: {
        std::vector<ExtScalar> a;
        for (int i = 0; i < n; ++i) a.push_back(detail::random_unit(F, rng));
        g = kgen::torus(F, n, a);
        break;
      }
      case 1: {
        if (n < 2) { g = UHMatrix::j(F, n); break; }
        const int i = static_cast<int>(rng() % n);
        const int k = (i + 1 + static_cast<int>(rng() % (n - 1))) % n;
        const bool lower = rng() % 2;
        g = kgen::elementary(F, n, lower ? 2 * n - 1 - i : i, lower ? 2 * n - 1 - k : k,
                             detail::random_integral(F, rng));
        break;
      }
      case 2: {
        std::vector<ExtScalar> a(n * n, ExtScalar::zero(F));
        for (int i = 0; i < n; ++i) {
          a[i * n + i] = ExtScalar(F, Padic::exact_zero(F.p, F.N), detail::random_integral(F, rng).re());
          for (int k = i + 1; k < n; ++k) {
            a[i * n + k] = detail::random_integral(F, rng);
            a[k * n + i] = -a[i * n + k].conj();
          }
        }
        g = kgen::unipotent(F, n, a);
        break;
      }
      case 3: g = UHMatrix::j(F, n); break;
      case 4: g = kgen::pair_flip(F, n, n - 1); break;
      default: {
        const int i = static_cast<int>(rng() % n), k = static_cast<int>(rng() % n);
        g = i == k ? kgen::pair_flip(F, n, i) : kgen::pair_swap(F, n, i, k);
      }
    }
    k = g * k;
  }
  if (!is_in_K(k)) throw IdentityError("random_K produced an element outside K");
  return k;
}

inline UHMatrix random_K(int n, const ExtField& F, int word_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_K(n, F, word_len, rng);
}

/// Haar measure of {k in K_1 : v(d_1(k . x_ell)) = m}, by enumerating the
/// residues of (u, v) modulo p^(ell+1) on the two cells of K_1. The unit
/// alpha only rescales d_1 by a unit and is not enumerated.
inline std::map<int, BigRat> n1_valuation_distribution(int ell, int p) {
  if (p == 2 || !detail::is_prime(p)) throw UsageError("n1_valuation_distribution requires an odd prime");
  if (ell < 0) throw UsageError("ell must be non-negative");
  const ExtField F = ExtField::make(p, 8);
  __int128 M = 1;
  for (int i = 0; i <= ell; ++i) M *= p;
  if (M * M > static_cast<__int128>(1) << 34) throw UsageError("enumeration too large");
  __int128 p2l = 1;
  for (int i = 0; i < 2 * ell; ++i) p2l *= p;
  auto vp = [p](__int128 a) {
    if (a < 0) a = -a;
    int k = 0;
    while (a % p == 0) { a /= p; ++k; }
    return k;
  };
  const __int128 eps = F.eps;
  // Counts indexed by v(d_1) + ell.
  std::vector<long long> c11(4 * ell + 8, 0), c12(4 * ell + 8, 0);
  auto bump = [](std::vector<long long>& c, int k) {
    if (k >= static_cast<int>(c.size())) c.resize(k + 1, 0);
    ++c[k];
  };
  for (__int128 u = 0; u < M; ++u)
    for (__int128 v = 0; v < M; ++v) {
      const __int128 t = 1 + u * v;
      bump(c11, vp(t * t - p2l * u * u * eps));
    }
  for (__int128 v = 0; v < M; ++v) bump(c12, vp(eps * p2l - v * v));
  const BigRat q(p), vol11 = BigRat(1) / (1 + 1 / q), vol12 = (1 / q) / (1 + 1 / q);
  BigInt Mz = detail::p_power(p, ell + 1);
  std::map<int, BigRat> out;
  for (std::size_t k = 0; k < c11.size(); ++k)
    if (c11[k]) out[static_cast<int>(k) - ell] += vol11 * BigRat(static_cast<long>(c11[k])) / BigRat(Mz * Mz);
  for (std::size_t k = 0; k < c12.size(); ++k)
    if (c12[k]) out[static_cast<int>(k) - ell] += vol12 * BigRat(static_cast<long>(c12[k])) / BigRat(Mz);
  for (auto& [m, w] : out) w.canonicalize();
  return out;
}

/// sum_m mass(m) (-1)^m q^(-m(s - 1/2)) equals the rank-one closed form in
/// Y = q^s, coefficientwise and exactly at u^2 = 1/p.
inline bool n1_resummation_matches(int ell, int p) {
  const auto dist = n1_valuation_distribution(ell, p);
  const LaurentPoly C = omega_n1_closed(ell).as_polynomial();
  BigRat u2(1, p);
  u2.canonicalize();
  std::set<int> ks;
  for (const auto& [e, c] : C.terms()) ks.insert(e[0]);
  for (const auto& [m, w] : dist) ks.insert(-m);
  for (int k : ks) {
    const int m = -k;
    BigRat lhs = 0;
    if (auto it = dist.find(m); it != dist.end()) lhs = m % 2 ? BigRat(-it->second) : it->second;
    BigRat rhs;
    try {
      rhs = (C.coef({k}) * RatF::u_pow(m)).eval_u2(u2);
    } catch (const UsageError&) {
      return false;
    }
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace padicsph
