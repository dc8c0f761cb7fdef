#include <catch_amalgamated.hpp>

#include <random>

#include "padicsph/weyl.hpp"
#include "test_support.hpp"

using namespace padicsph;

namespace {
LaurentPoly X(std::vector<int> e, long c = 1) { return LaurentPoly::monomial(e, RatF(c)); }

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }
}  // namespace

TEST_CASE("weyl_act examples", "[laurent-weyl]") {
  std::mt19937_64 rng(1);
  LaurentPoly f = testsupport::random_laurent(rng, 3, 6, 3);
  CHECK(weyl_act(WeylElement::identity(3), f) == f);
  CHECK(weyl_act(WeylElement::tau(1), X({1})) == X({-1}));
  CHECK(weyl_act(WeylElement::transposition(2, 0, 1), X({2, 1})) == X({1, 2}));
  CHECK_THROWS_AS(weyl_act(WeylElement::identity(2), X({1})), UsageError);
}

TEST_CASE("group order and action law", "[laurent-weyl][property]") {
  for (int n = 1; n <= 4; ++n) {
    auto W = weyl_group(n);
    CHECK(static_cast<long>(W.size()) == (1L << n) * factorial(n));
    std::set<WeylElement> distinct(W.begin(), W.end());
    CHECK(distinct.size() == W.size());
  }
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 3; ++n) {
    LaurentPoly f = testsupport::random_laurent(rng, n, 5, 3, 1);
    auto W = weyl_group(n);
    for (const auto& s : W)
      for (const auto& t : W) {
        REQUIRE(weyl_act(s * t, f) == weyl_act(s, weyl_act(t, f)));
      }
    for (const auto& s : W) {
      CHECK(s * s.inverse() == WeylElement::identity(n));
      CHECK((s * s).sign() == 1);
    }
  }
}

TEST_CASE("sign is the determinant and (-1)^length", "[laurent-weyl]") {
  // Oracle: length = number of positive roots sent negative.
  for (int n = 1; n <= 3; ++n) {
    RootSystemC R(n);
    for (const auto& s : weyl_group(n)) {
      int len = 0;
      for (const auto& a : R.positive()) len += !RootSystemC::is_positive(s.act(a));
      CHECK(s.sign() == (len % 2 ? -1 : 1));
    }
  }
}

TEST_CASE("root system counts", "[laurent-weyl]") {
  for (int n = 1; n <= 4; ++n) {
    RootSystemC R(n);
    CHECK(static_cast<int>(R.short_pos.size()) == n * (n - 1));
    CHECK(static_cast<int>(R.long_pos.size()) == n);
    // rho is half the sum of positive roots.
    Exponent two_rho(n, 0);
    for (const auto& a : R.positive()) two_rho = exp_add(two_rho, a);
    CHECK(two_rho == exp_scale(R.rho(), 2));
  }
}

TEST_CASE("monomial symmetric functions", "[laurent-weyl]") {
  CHECK(monomial_symmetric(Partition({1})) == X({1}) + X({-1}));
  CHECK(monomial_symmetric(Partition({0, 0})) == X({0, 0}));
  // Oracle: the signed-permutation orbit of (1,1) has 4 elements.
  CHECK(monomial_symmetric(Partition({1, 1})) ==
        X({1, 1}) + X({1, -1}) + X({-1, 1}) + X({-1, -1}));
  CHECK(monomial_symmetric(Partition({2, 1, 0})).size() == 24);
  CHECK(is_weyl_invariant(monomial_symmetric(Partition({3, 1, 1}))));
  CHECK_FALSE(is_weyl_invariant(X({1, 0})));
}

TEST_CASE("dominance examples", "[laurent-weyl]") {
  CHECK(dominance_leq({0, 0}, {1, 1}) == Dominance::True);
  CHECK(dominance_leq({0, 0}, {1, 0}) == Dominance::Incomparable);
  CHECK(dominance_leq({2, 1}, {2, 1}) == Dominance::True);
  CHECK(dominance_leq({1, 1}, {0, 0}) == Dominance::False);
  CHECK(dominance_leq({0}, {2}) == Dominance::True);
  CHECK(dominance_leq({0}, {1}) == Dominance::Incomparable);
}

TEST_CASE("dominance agrees with a search oracle", "[laurent-weyl][property]") {
  // Oracle: breadth-first search adding simple roots to mu.
  auto reachable = [](Exponent mu, const Exponent& lam) {
    const int n = static_cast<int>(mu.size());
    std::vector<Exponent> simple;
    for (int i = 0; i + 1 < n; ++i) {
      Exponent a(n, 0);
      a[i] = 1; a[i + 1] = -1;
      simple.push_back(a);
    }
    Exponent last(n, 0);
    last[n - 1] = 2;
    simple.push_back(last);
    std::set<Exponent> seen{mu};
    std::vector<Exponent> todo{mu};
    Exponent rho = RootSystemC(n).rho();
    auto ht = [&](const Exponent& e) { return std::inner_product(e.begin(), e.end(), rho.begin(), 0); };
    while (!todo.empty()) {
      Exponent e = todo.back();
      todo.pop_back();
      if (e == lam) return true;
      for (const auto& a : simple) {
        Exponent f = exp_add(e, a);
        if (ht(f) <= ht(lam) && seen.insert(f).second) todo.push_back(f);
      }
    }
    return false;
  };
  for (int n = 1; n <= 3; ++n) {
    auto parts = partitions_up_to(n, 4);
    for (const auto& a : parts)
      for (const auto& b : parts) {
        bool leq = reachable(a.parts(), b.parts());
        bool geq = reachable(b.parts(), a.parts());
        Dominance d = dominance_leq(a.parts(), b.parts());
        CHECK((d == Dominance::True) == leq);
        CHECK((d == Dominance::False) == (geq && !leq));
      }
  }
}

TEST_CASE("monomial products are unitriangular with natural coefficients", "[laurent-weyl][property]") {
  for (int n = 1; n <= 3; ++n) {
    auto parts = partitions_up_to(n, 3);
    for (const auto& l : parts)
      for (const auto& m : parts) {
        LaurentPoly prod = monomial_symmetric(l) * monomial_symmetric(m);
        Exponent top = exp_add(l.parts(), m.parts());
        for (const auto& [e, c] : prod.terms()) {
          if (!is_dominant(e)) continue;
          REQUIRE(c.is_constant());
          BigRat v = c.constant_value();
          CHECK(v.get_den() == 1);
          CHECK(v > 0);
          if (e == top) CHECK(v == 1);
          else CHECK(dominance_leq(e, top) == Dominance::True);
        }
        CHECK(prod.coef(top) == RatF(1));
      }
  }
}

TEST_CASE("exact division", "[laurent-weyl]") {
  CHECK(laurent_div_exact(X({2}) - X({-2}), X({1}) - X({-1})) == X({1}) + X({-1}));
  CHECK_THROWS_WITH(laurent_div_exact(X({1}) + X({0}), X({1}) - X({0})), "inexact division");
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 3;
    LaurentPoly f = testsupport::random_laurent(rng, n, 5, 3);
    LaurentPoly d = testsupport::random_laurent(rng, n, 3, 2);
    if (d.is_zero()) continue;
    CHECK(laurent_div_exact(f * d, d) == f);
  }
}

TEST_CASE("sign twists and squared variables", "[laurent-weyl]") {
  LaurentPoly f = X({1, 2}, 3) + X({-1, 0});
  CHECK(f.sign_twisted({-1, 1}) == X({1, 2}, -3) - X({-1, 0}));
  CHECK(f.squared_variables() == X({2, 4}, 3) + X({-2, 0}));
}
