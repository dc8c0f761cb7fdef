#pragma once
// Invariant suites per module, run by `padic_sph selfcheck`. Each check counts
// the instances it verified and the ones that failed.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cartan.hpp"
#include "hall_littlewood.hpp"
#include "plancherel.hpp"
#include "spherical.hpp"
#include "weyl.hpp"

namespace padicsph {

struct CheckResult {
  std::string name;
  int passed = 0;
  int failed = 0;
};

struct SuiteReport {
  std::string suite;
  int n = 0;
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (c.failed) return false;
    return true;
  }
  int passed() const {
    int s = 0;
    for (const auto& c : checks) s += c.passed;
    return s;
  }
  int failed() const {
    int s = 0;
    for (const auto& c : checks) s += c.failed;
    return s;
  }
};

inline const std::vector<std::string>& selfcheck_suites() {
  static const std::vector<std::string> s = {"exact-field", "laurent-weyl", "hall-littlewood",
                                             "spherical",   "plancherel",   "padic-cartan"};
  return s;
}

namespace detail {

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : r_(r) {}
  void check(const std::string& name, const std::function<void(std::function<void(bool)>)>& body) {
    CheckResult c{name};
    try {
      body([&](bool ok) { ++(ok ? c.passed : c.failed); });
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      ++c.failed;
    }
    r_.checks.push_back(c);
  }

 private:
  SuiteReport& r_;
};

inline UPoly sc_upoly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), c(-5, 5), d(1, 3);
  std::vector<BigRat> v(deg(rng) + 1);
  for (auto& x : v) {
    x = BigRat(c(rng), d(rng));
    x.canonicalize();
  }
  return UPoly::from_coeffs(v);
}

inline RatF sc_ratf(std::mt19937_64& rng) {
  UPoly den;
  do den = sc_upoly(rng, 3); while (den.is_zero());
  return RatF::normalize(sc_upoly(rng, 3), den);
}

inline LaurentPoly sc_laurent(std::mt19937_64& rng, int n, int terms, int span) {
  std::uniform_int_distribution<int> e(-span, span);
  LaurentPoly f(n);
  for (int k = 0; k < terms; ++k) {
    Exponent x(n);
    for (auto& v : x) v = e(rng);
    f.add_term(x, RatF(sc_upoly(rng, 1)));
  }
  return f;
}

inline LaurentPoly sc_symmetric(std::mt19937_64& rng, int n) {
  const LaurentPoly seed = sc_laurent(rng, n, 2, 2);
  LaurentPoly f(n);
  for (const auto& s : weyl_group(n)) f += weyl_act(s, seed);
  return f;
}

inline HLParams sc_params(std::mt19937_64& rng) {
  auto r = [&] {
    BigRat x(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 7) + 1);
    x.canonicalize();
    return RatF(x);
  };
  return {r(), r()};
}

inline void suite_exact_field(Recorder& R, std::mt19937_64& rng) {
  R.check("field axioms", [&](auto ok) {
    for (int t = 0; t < 40; ++t) {
      RatF a = sc_ratf(rng), b = sc_ratf(rng), c = sc_ratf(rng);
      ok((a + b) + c == a + (b + c));
      ok((a * b) * c == a * (b * c));
      ok(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) ok(a * a.inverse() == RatF(1));
    }
  });
  R.check("canonical normal form", [&](auto ok) {
    for (int t = 0; t < 40; ++t) {
      RatF a = sc_ratf(rng);
      ok(a.den().lead() == 1 && UPoly::gcd(a.num(), a.den()).is_one());
    }
  });
  R.check("string round trip", [&](auto ok) {
    for (int t = 0; t < 40; ++t) {
      RatF a = sc_ratf(rng);
      ok(parse_ratf(a.to_string()) == a);
    }
  });
}

inline void suite_laurent_weyl(Recorder& R, std::mt19937_64& rng, int n) {
  const auto W = weyl_group(n);
  R.check("group order", [&](auto ok) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    ok(static_cast<long>(W.size()) == (1L << n) * f);
  });
  R.check("action law", [&](auto ok) {
    const LaurentPoly f = sc_laurent(rng, n, 4, 3);
    for (std::size_t i = 0; i < W.size(); i += 1 + W.size() / 12)
      for (const auto& t : W) ok(weyl_act(W[i] * t, f) == weyl_act(W[i], weyl_act(t, f)));
  });
  R.check("monomial symmetric functions are invariant", [&](auto ok) {
    for (const auto& l : partitions_up_to(n, 4)) ok(is_weyl_invariant(monomial_symmetric(l)));
  });
  R.check("exact division", [&](auto ok) {
    for (int t = 0; t < 10; ++t) {
      LaurentPoly f = sc_laurent(rng, n, 3, 2), g = sc_laurent(rng, n, 2, 2);
      if (g.is_zero()) continue;
      ok(laurent_div_exact(f * g, g) == f);
    }
  });
}

inline void suite_hall_littlewood(Recorder& R, std::mt19937_64& rng, int n) {
  const auto W = weyl_group(n);
  std::vector<HLParams> ps = {HLParams::standard(), sc_params(rng), sc_params(rng)};
  R.check("Q_lambda is W-invariant", [&](auto ok) {
    for (const auto& l : partitions_up_to(n, 3))
      for (const auto& t : ps) ok(is_weyl_invariant(q_polynomial(l, t)));
  });
  R.check("P_lambda is unitriangular", [&](auto ok) {
    for (const auto& l : partitions_up_to(n, 3)) {
      auto e = expand_in_monomials(hl_p(l, HLParams::standard()));
      ok(e.at(l) == RatF(1));
      for (const auto& [mu, c] : e) ok(dominance_leq(mu.parts(), l.parts()) == Dominance::True);
    }
  });
  R.check("decompose_R0 round trip", [&](auto ok) {
    for (int t = 0; t < 5; ++t) {
      const LaurentPoly f = sc_symmetric(rng, n);
      ok(reassemble_R0(decompose_R0(f, HLParams::standard()), HLParams::standard()) == f);
    }
  });
}

inline void suite_spherical(Recorder& R, int n) {
  R.check("gamma G = c", [&](auto ok) {
    ok(equal_as_functions(gamma_factor(n) * g_factor(n), c_function(n, HLParams::standard())));
  });
  R.check("Gamma_sigma = G(sigma z)/G(z)", [&](auto ok) {
    const FactorSystem G = g_factor(n);
    for (const auto& s : weyl_group(n)) ok(equal_as_functions(Gamma_sigma(s) * G, G.composed_with(s)));
  });
  R.check("Psi = c_lambda w_lambda P_lambda", [&](auto ok) {
    for (const auto& l : partitions_up_to(n, 3)) ok(psi_from_omega(l) == spherical_data(l).psi_poly);
  });
  R.check("omega at -epsilon is 1", [&](auto ok) {
    auto e = epsilon_shift(n, 3.0);
    for (auto& x : e) x = -x;
    const EvalPoint p = EvalPoint::from_s(e, 3.0);
    for (const auto& l : partitions_up_to(n, 3)) ok(std::abs(omega_explicit(l).eval(p) - 1.0) < 1e-9);
  });
  if (n == 1)
    R.check("rank-one closed form", [&](auto ok) {
      for (int l = 0; l <= 6; ++l) ok(n1_oracle_matches(l, 1) && n1_oracle_matches(l, -1));
    });
}

inline void suite_plancherel(Recorder& R, std::mt19937_64& rng, int n) {
  if (n > 2) throw UsageError("plancherel suite supports n <= 2");
  const Quadrature Q({n, n == 1 ? 256 : 128, 3.0});
  const HLParams p = HLParams::standard();
  R.check("total mass", [&](auto ok) { ok(std::abs(Q.mass() - 1) <= 1e-10); });
  R.check("Gram matrix", [&](auto ok) {
    auto parts = partitions_up_to(n, 3);
    std::vector<std::vector<cplx>> v;
    std::vector<double> winv;
    for (const auto& l : parts) {
      v.push_back(Q.values(hl_p(l, p)));
      winv.push_back(w_lambda(l).inverse().eval(Q.u0()).real());
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = 0; j < parts.size(); ++j)
        ok(std::abs(Q.inner(v[i], v[j]) - (i == j ? winv[i] : 0.0)) <= 1e-8 * std::sqrt(winv[i] * winv[j]));
  });
  std::normal_distribution<double> N;
  auto random_phi = [&] {
    SchwartzElement phi{n, {}};
    for (const auto& l : partitions_up_to(n, 2)) phi.support[l] = cplx(N(rng), N(rng));
    return phi;
  };
  R.check("Plancherel identity", [&](auto ok) {
    for (int t = 0; t < 3; ++t) {
      auto [lhs, rhs] = plancherel_check(random_phi(), random_phi(), Q);
      ok(std::abs(lhs - rhs) <= 1e-6 * std::abs(lhs));
    }
  });
  R.check("inversion", [&](auto ok) {
    for (int t = 0; t < 3; ++t) {
      const SchwartzElement phi = random_phi();
      std::vector<Partition> ls;
      double scale = 0;
      for (const auto& [l, c] : phi.support) {
        ls.push_back(l);
        scale = std::max(scale, std::abs(c));
      }
      const auto rec = invert(fourier(phi, 3.0), ls, Q);
      for (const auto& l : ls) ok(std::abs(rec.at(l) - phi.support.at(l)) <= 1e-6 * scale);
    }
  });
}

inline void suite_padic_cartan(Recorder& R, std::mt19937_64& rng, int n) {
  for (int p : {3, 5}) {
    const ExtField F = ExtField::make(p);
    const std::string tag = " (p=" + std::to_string(p) + ")";
    R.check("representatives lie in X" + tag, [&](auto ok) {
      for (const auto& l : partitions_up_to(n, 4)) ok(is_in_X(make_x_lambda(l, F)));
    });
    R.check("cartan_lambda, cartan_reduce and orbit class on K-orbits" + tag, [&](auto ok) {
      for (int t = 0; t < 20; ++t) {
        std::vector<int> v(n);
        for (auto& x : v) x = static_cast<int>(rng() % 4);
        std::sort(v.rbegin(), v.rend());
        const Partition l(v);
        const UHMatrix x = make_x_lambda(l, F).acted_on_by(random_K(n, F, 8, rng));
        ok(cartan_lambda(x) == l);
        ok(cartan_reduce(x).lambda == l);
        ok(g_orbit_class(x) == l.size() % 2);
      }
    });
    R.check("n = 1 orbital integral resummation" + tag, [&](auto ok) {
      for (int l = 0; l <= 4; ++l) ok(n1_resummation_matches(l, p));
    });
  }
  R.check("even residue representatives (p=2)", [&](auto ok) {
    if (n > 2) return;
    const ExtField F2 = ExtField::make(2);
    for (int r = 0; r <= n; ++r)
      for (const auto& l : partitions_up_to(r, 3)) {
        const Partition mu(std::vector<int>(n - r, 1));
        const UHMatrix x = make_x_lambda_mu(l, mu, F2);
        ok(is_in_X(x));
        ok(g_orbit_class(x) == (l.size() + mu.size()) % 2);
      }
  });
}

}  // namespace detail

/// Runs the named suite at rank n with a fixed seed.
inline SuiteReport run_selfcheck(const std::string& suite, int n, std::uint64_t seed = 1) {
  if (n < 1 || n > 3) throw UsageError("selfcheck supports 1 <= n <= 3");
  SuiteReport rep{suite, n, {}};
  detail::Recorder R(rep);
  std::mt19937_64 rng(seed);
  if (suite == "exact-field") detail::suite_exact_field(R, rng);
  else if (suite == "laurent-weyl") detail::suite_laurent_weyl(R, rng, n);
  else if (suite == "hall-littlewood") detail::suite_hall_littlewood(R, rng, n);
  else if (suite == "spherical") detail::suite_spherical(R, n);
  else if (suite == "plancherel") detail::suite_plancherel(R, rng, n);
  else if (suite == "padic-cartan") detail::suite_padic_cartan(R, rng, n);
  else throw UsageError("unknown suite '" + suite + "'");
  return rep;
}

}  // namespace padicsph
