#pragma once
// Root system of type C_n, its Weyl group of signed permutations, dominance
// order and monomial symmetric functions.

#include <algorithm>
#include <compare>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"

namespace padicsph {

/// Weakly decreasing list of n non-negative integers.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : p_(std::move(parts)) {
    for (std::size_t i = 0; i < p_.size(); ++i) {
      if (p_[i] < 0) throw UsageError("partition parts must be non-negative");
      if (i > 0 && p_[i] > p_[i - 1]) throw UsageError("partition must be weakly decreasing");
    }
  }
  static Partition zero(int n) { return Partition(std::vector<int>(n, 0)); }

  int rank() const { return static_cast<int>(p_.size()); }
  const std::vector<int>& parts() const { return p_; }
  int operator[](int i) const { return p_[i]; }
  int size() const { return std::accumulate(p_.begin(), p_.end(), 0); }  // |lambda|

  /// m_k = #{i : lambda_i = k}.
  int multiplicity(int k) const {
    return static_cast<int>(std::count(p_.begin(), p_.end(), k));
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < p_.size(); ++i) s += (i ? "," : "") + std::to_string(p_[i]);
    return s + ")";
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> p_;
};

/// All partitions with n parts and |lambda| <= max_size.
inline std::vector<Partition> partitions_up_to(int n, int max_size) {
  std::vector<Partition> out;
  std::vector<int> cur(n, 0);
  std::function<void(int, int, int)> rec = [&](int i, int cap, int left) {
    if (i == n) { out.emplace_back(cur); return; }
    for (int v = 0; v <= std::min(cap, left); ++v) {
      cur[i] = v;
      rec(i + 1, v, left - v);
    }
  };
  rec(0, max_size, max_size);
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    return a.size() != b.size() ? a.size() < b.size() : a > b;
  });
  return out;
}

struct RootSystemC {
  int n;
  std::vector<Exponent> short_pos;  // e_i - e_j, e_i + e_j for i < j
  std::vector<Exponent> long_pos;   // 2 e_i

  explicit RootSystemC(int rank) : n(rank) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Exponent a(n, 0), b(n, 0);
        a[i] = 1; a[j] = -1;
        b[i] = 1; b[j] = 1;
        short_pos.push_back(a);
        short_pos.push_back(b);
      }
    for (int i = 0; i < n; ++i) {
      Exponent a(n, 0);
      a[i] = 2;
      long_pos.push_back(a);
    }
  }

  std::vector<Exponent> positive() const {
    std::vector<Exponent> r = short_pos;
    r.insert(r.end(), long_pos.begin(), long_pos.end());
    return r;
  }

  /// Half the sum of positive roots: (n, n-1, ..., 1).
  Exponent rho() const {
    Exponent r(n);
    for (int i = 0; i < n; ++i) r[i] = n - i;
    return r;
  }

  /// Positive roots have first nonzero coordinate positive.
  static bool is_positive(const Exponent& a) {
    for (int x : a)
      if (x != 0) return x > 0;
    return false;
  }
  static bool is_long(const Exponent& a) {
    int nz = 0;
    for (int x : a) nz += (x != 0);
    return nz == 1;
  }
};

/// Signed permutation acting by (sigma mu)_{perm(i)} = signs(i) mu_i.
struct WeylElement {
  std::vector<int> perm;   // 0-based
  std::vector<int> signs;  // +-1

  static WeylElement identity(int n) {
    WeylElement w;
    w.perm.resize(n);
    std::iota(w.perm.begin(), w.perm.end(), 0);
    w.signs.assign(n, 1);
    return w;
  }
  /// tau: z_n -> -z_n.
  static WeylElement tau(int n) {
    WeylElement w = identity(n);
    w.signs[n - 1] = -1;
    return w;
  }
  /// Transposition of coordinates i and j.
  static WeylElement transposition(int n, int i, int j) {
    WeylElement w = identity(n);
    std::swap(w.perm[i], w.perm[j]);
    return w;
  }

  int rank() const { return static_cast<int>(perm.size()); }

  Exponent act(const Exponent& mu) const {
    Exponent r(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) r[perm[i]] = signs[i] * mu[i];
    return r;
  }

  /// (this * o) acts as this(o(mu)).
  WeylElement operator*(const WeylElement& o) const {
    const int n = rank();
    WeylElement r;
    r.perm.resize(n);
    r.signs.resize(n);
    for (int i = 0; i < n; ++i) {
      r.perm[i] = perm[o.perm[i]];
      r.signs[i] = signs[o.perm[i]] * o.signs[i];
    }
    return r;
  }

  WeylElement inverse() const {
    const int n = rank();
    WeylElement r;
    r.perm.resize(n);
    r.signs.resize(n);
    for (int i = 0; i < n; ++i) {
      r.perm[perm[i]] = i;
      r.signs[perm[i]] = signs[i];
    }
    return r;
  }

  /// Determinant of the signed permutation matrix, i.e. (-1)^length.
  int sign() const {
    int s = 1;
    std::vector<int> p = perm;
    for (int i = 0; i < rank(); ++i) {
      while (p[i] != i) {
        std::swap(p[i], p[p[i]]);
        s = -s;
      }
      s *= signs[i];
    }
    return s;
  }

  friend bool operator==(const WeylElement&, const WeylElement&) = default;
  friend auto operator<=>(const WeylElement&, const WeylElement&) = default;
};

/// All 2^n n! elements in a fixed order.
inline std::vector<WeylElement> weyl_group(int n) {
  std::vector<WeylElement> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    for (int mask = 0; mask < (1 << n); ++mask) {
      WeylElement w;
      w.perm = p;
      w.signs.resize(n);
      for (int i = 0; i < n; ++i) w.signs[i] = (mask >> i & 1) ? -1 : 1;
      out.push_back(w);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline LaurentPoly weyl_act(const WeylElement& s, const LaurentPoly& f) {
  if (s.rank() != f.rank()) throw UsageError("rank mismatch");
  LaurentPoly r(f.rank());
  for (const auto& [e, c] : f.terms()) r.add_term(s.act(e), c);
  return r;
}

inline bool is_weyl_invariant(const LaurentPoly& f) {
  const int n = f.rank();
  // Simple reflections generate W.
  for (int i = 0; i + 1 < n; ++i)
    if (weyl_act(WeylElement::transposition(n, i, i + 1), f) != f) return false;
  return n == 0 || weyl_act(WeylElement::tau(n), f) == f;
}

/// Dominant representative of the W-orbit: absolute values sorted decreasingly.
inline Exponent dominant_of(Exponent mu) {
  for (auto& x : mu) x = std::abs(x);
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return mu;
}

inline bool is_dominant(const Exponent& mu) {
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] < 0) return false;
    if (i > 0 && mu[i] > mu[i - 1]) return false;
  }
  return true;
}

inline std::set<Exponent> weyl_orbit(const Exponent& mu) {
  std::set<Exponent> orbit;
  for (const auto& w : weyl_group(static_cast<int>(mu.size()))) orbit.insert(w.act(mu));
  return orbit;
}

/// m_lambda = sum of X^nu over the W-orbit of lambda, each element once.
inline LaurentPoly monomial_symmetric(const Exponent& lambda) {
  LaurentPoly r(static_cast<int>(lambda.size()));
  for (const auto& nu : weyl_orbit(lambda)) r.add_term(nu, 1);
  return r;
}
inline LaurentPoly monomial_symmetric(const Partition& lambda) {
  return monomial_symmetric(lambda.parts());
}

enum class Dominance { True, False, Incomparable };

/// Coordinates of beta in the simple roots e_i - e_{i+1}, 2 e_n, if integral.
inline std::optional<std::vector<int>> simple_root_coords(const Exponent& beta) {
  const int n = static_cast<int>(beta.size());
  std::vector<int> c(n);
  int acc = 0;
  for (int i = 0; i < n; ++i) acc += beta[i];
  if (acc % 2 != 0) return std::nullopt;
  int partial = 0;
  for (int i = 0; i + 1 < n; ++i) {
    partial += beta[i];
    c[i] = partial;
  }
  if (n > 0) c[n - 1] = acc / 2;
  return c;
}

/// True iff lambda - mu lies in Q+; False iff mu - lambda lies in Q+ with
/// mu != lambda; Incomparable otherwise.
inline Dominance dominance_leq(const Exponent& mu, const Exponent& lambda) {
  auto nonneg = [](const std::optional<std::vector<int>>& c) {
    return c && std::all_of(c->begin(), c->end(), [](int x) { return x >= 0; });
  };
  if (nonneg(simple_root_coords(exp_sub(lambda, mu)))) return Dominance::True;
  if (nonneg(simple_root_coords(exp_sub(mu, lambda)))) return Dominance::False;
  return Dominance::Incomparable;
}

/// Fundamental-weight coordinates c_i = mu_i - mu_{i+1}, c_n = mu_n.
inline std::vector<int> fundamental_coords(const Exponent& mu) {
  const int n = static_cast<int>(mu.size());
  std::vector<int> c(n);
  for (int i = 0; i < n; ++i) c[i] = mu[i] - (i + 1 < n ? mu[i + 1] : 0);
  return c;
}
inline Exponent from_fundamental_coords(const std::vector<int>& c) {
  const int n = static_cast<int>(c.size());
  Exponent mu(n);
  int acc = 0;
  for (int i = n - 1; i >= 0; --i) {
    acc += c[i];
    mu[i] = acc;
  }
  return mu;
}

}  // namespace padicsph
