#include <catch_amalgamated.hpp>

#include <random>

#include "padicsph/cartan.hpp"
#include "test_support.hpp"

using namespace padicsph;

namespace {

BigRat rat(long a, long b = 1) {
  BigRat r(a, b);
  r.canonicalize();
  return r;
}

BigRat random_rat(std::mt19937_64& rng, int p) {
  std::uniform_int_distribution<long> num(-2000, 2000), e(0, 3);
  long den = 1;
  for (int k = e(rng); k > 0; --k) den *= p;
  long n;
  do n = num(rng); while (n == 0);
  return rat(n, den * (1 + 2 * static_cast<long>(rng() % 3)));
}

// p-adic equality at the available precision, with at least `digits` digits.
bool same(const Padic& a, const Padic& b, int digits) {
  const Padic d = a - b;
  return d.is_zero() && d.absprec() >= digits;
}
bool same(const ExtScalar& a, const ExtScalar& b, int digits) {
  const ExtScalar d = a - b;
  return d.is_zero() && d.absprec() >= digits;
}

bool same(const UHMatrix& a, const UHMatrix& b, int digits) {
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k)
      if (!same(a(i, k), b(i, k), digits)) return false;
  return true;
}

// Exact arithmetic in Q(sqrt(eps)) for the characteristic polynomial oracle.
struct QE {
  BigRat a, b;
};
QE mul(const QE& x, const QE& y, long eps) {
  QE r{x.a * y.a + BigRat(eps) * x.b * y.b, x.a * y.b + x.b * y.a};
  r.a.canonicalize();
  r.b.canonicalize();
  return r;
}
QE inv(const QE& x, long eps) {
  BigRat n = x.a * x.a - BigRat(eps) * x.b * x.b;
  return {x.a / n, -x.b / n};
}

// det(t - A) by Gaussian elimination over Q(sqrt(eps)).
QE det_t_minus(std::vector<std::vector<QE>> A, long t, long eps) {
  const int m = static_cast<int>(A.size());
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) A[i][k] = {-A[i][k].a, -A[i][k].b};
    A[i][i].a += t;
  }
  QE det{1, 0};
  for (int s = 0; s < m; ++s) {
    int piv = -1;
    for (int i = s; i < m; ++i)
      if (sgn(A[i][s].a) != 0 || sgn(A[i][s].b) != 0) { piv = i; break; }
    if (piv < 0) return {0, 0};
    if (piv != s) {
      std::swap(A[s], A[piv]);
      det = {-det.a, -det.b};
    }
    det = mul(det, A[s][s], eps);
    const QE iv = inv(A[s][s], eps);
    for (int i = s + 1; i < m; ++i) {
      const QE f = mul(A[i][s], iv, eps);
      for (int k = s; k < m; ++k) {
        const QE t2 = mul(f, A[s][k], eps);
        A[i][k] = {A[i][k].a - t2.a, A[i][k].b - t2.b};
      }
    }
  }
  return det;
}

std::string rows(const UHMatrix& x) {
  std::string s;
  for (int i = 0; i < x.dim(); ++i) {
    for (int k = 0; k < x.dim(); ++k)
      s += "(" + x(i, k).re().to_rational().get_str() + "," + x(i, k).im().to_rational().get_str() + ") ";
    s += "\n";
  }
  return s;
}

Partition random_lambda(std::mt19937_64& rng, int n, int max_part) {
  std::vector<int> l(n);
  for (auto& v : l) v = static_cast<int>(rng() % (max_part + 1));
  std::sort(l.rbegin(), l.rend());
  return Partition(l);
}

}  // namespace

TEST_CASE("p-adic arithmetic agrees with rational arithmetic", "[padic]") {
  std::mt19937_64 rng(1);
  for (int p : {2, 3, 5, 7}) {
    const int N = 20;
    for (int t = 0; t < 200; ++t) {
      const BigRat a = random_rat(rng, p), b = random_rat(rng, p);
      const Padic A = Padic::from_rational(a, p, N), B = Padic::from_rational(b, p, N);
      BigRat s = a + b, pr = a * b, q = a / b;
      s.canonicalize();
      pr.canonicalize();
      q.canonicalize();
      CHECK(same(A + B, Padic::from_rational(s, p, N), N - 8));
      CHECK(same(A * B, Padic::from_rational(pr, p, N), N - 8));
      CHECK(same(A / B, Padic::from_rational(q, p, N), N - 8));
      CHECK(same(A - A, Padic::exact_zero(p, N), N - 8));
    }
  }
}

TEST_CASE("p-adic valuations and precision tracking", "[padic]") {
  const int p = 3, N = 10;
  CHECK(Padic::from_rational(rat(18), p, N).valuation() == 2);
  CHECK(Padic::from_rational(rat(5, 27), p, N).valuation() == -3);
  // 1 + p^N and 1 agree to N digits; their difference is an inexact zero.
  const Padic one = Padic::from_int(1, p, N);
  const Padic close = Padic::from_rational(rat(1 + 59049), p, N);  // 3^10
  const Padic d = close - one;
  CHECK(d.is_zero());
  CHECK(!d.is_exact_zero());
  CHECK(d.absprec() == N);
  CHECK_THROWS_AS(d.valuation(), PrecisionError);
  CHECK_THROWS_AS(d.inverse(), PrecisionError);
  // Products of inexact zeros keep an absolute bound.
  CHECK((d * Padic::from_rational(rat(1, 9), p, N)).absprec() == N - 2);
  // Relative precision is capped at N.
  CHECK((one * one).relprec() == N);
  // Cancellation loses relative precision.
  const Padic x = Padic::from_rational(rat(1 + 81), p, N);
  CHECK((x - one).valuation() == 4);
  CHECK((x - one).relprec() == N - 4);
  CHECK(Padic::from_rational(rat(-1, 3), p, N).to_rational() == rat(-1, 3));
}

TEST_CASE("p-adic square roots", "[padic]") {
  std::mt19937_64 rng(2);
  for (int p : {3, 5, 7, 11}) {
    for (int t = 0; t < 30; ++t) {
      long a;
      do a = static_cast<long>(rng() % 1000) + 1; while (a % p == 0);
      const Padic sq = Padic::from_rational(rat(a * a * p * p), p, 24);
      const Padic r = sq.sqrt();
      CHECK(same(r * r, sq, 20));
      CHECK(r.valuation() == 1);
    }
    const ExtField F = ExtField::make(p);
    CHECK_THROWS_AS(F.integer(F.eps).sqrt(), ArithmeticError);
  }
}

TEST_CASE("quadratic extension arithmetic", "[padic]") {
  std::mt19937_64 rng(3);
  for (int p : {2, 3, 5}) {
    const ExtField F = ExtField::make(p, 24);
    for (int t = 0; t < 100; ++t) {
      const ExtScalar x = ExtScalar::rational(F, random_rat(rng, p), random_rat(rng, p));
      const ExtScalar y = ExtScalar::rational(F, random_rat(rng, p), random_rat(rng, p));
      const int v = *x.valuation() + *y.valuation();
      CHECK(same((x * y).norm(), x.norm() * y.norm(), 2 * v + 12));
      CHECK(same(x * x.inverse(), ExtScalar::integer(F, 1), 12));
      CHECK(same((x * y).conj(), x.conj() * y.conj(), v + 12));
      CHECK(*(x * y).valuation() == *x.valuation() + *y.valuation());
    }
  }
  // (1 + sqrt(-3))/2 is a unit at p = 2 although its coordinates are not integral.
  const ExtField F2 = ExtField::make(2);
  const ExtScalar w = ExtScalar::rational(F2, rat(1, 2), rat(1, 2));
  CHECK(*w.valuation() == 0);
  CHECK(w.is_integral());
  // 2 + 2 sqrt(-3) = 4 w.
  CHECK(*ExtScalar::rational(F2, rat(2), rat(2)).valuation() == 2);
  CHECK(*ExtScalar::rational(F2, rat(2), rat(0)).valuation() == 1);
}

TEST_CASE("eps choices", "[padic]") {
  CHECK(ExtField::make(2).eps == -3);
  CHECK(ExtField::make(3).eps == 2);
  CHECK(ExtField::make(5).eps == 2);
  CHECK(ExtField::make(7).eps == 3);
  CHECK(ExtField::make(17).eps == 3);
  CHECK_THROWS_AS(ExtField::make(9), UsageError);
  CHECK_THROWS_AS(ExtField::make(3, 2), UsageError);
}

TEST_CASE("Berkowitz characteristic polynomial against elimination", "[padic]") {
  std::mt19937_64 rng(4);
  for (int p : {3, 5}) {
    const ExtField F = ExtField::make(p, 40);
    for (int m = 1; m <= 6; ++m)
      for (int t = 0; t < 5; ++t) {
        std::vector<std::vector<QE>> A(m, std::vector<QE>(m));
        std::vector<std::vector<ExtScalar>> Ap(m, std::vector<ExtScalar>(m));
        for (int i = 0; i < m; ++i)
          for (int k = 0; k < m; ++k) {
            A[i][k] = {rat(static_cast<long>(rng() % 7) - 3), rat(static_cast<long>(rng() % 5) - 2)};
            Ap[i][k] = ExtScalar::rational(F, A[i][k].a, A[i][k].b);
          }
        const auto c = berkowitz(Ap, F);
        REQUIRE(static_cast<int>(c.size()) == m + 1);
        for (long tv = -2; tv <= 3; ++tv) {
          ExtScalar val = ExtScalar::zero(F);
          for (int k = 0; k <= m; ++k) val = val * ExtScalar::integer(F, tv) + c[k];
          const QE want = det_t_minus(A, tv, F.eps);
          CHECK(same(val, ExtScalar::rational(F, want.a, want.b), 20));
        }
      }
  }
}

TEST_CASE("membership predicates", "[padic][cartan]") {
  for (int p : {3, 5}) {
    const ExtField F = ExtField::make(p);
    for (int n = 1; n <= 3; ++n)
      for (const auto& l : partitions_up_to(n, 4)) {
        const UHMatrix x = make_x_lambda(l, F);
        CHECK(is_in_G(x));
        CHECK(is_in_Xtilde(x));
        CHECK(is_in_X(x));
      }
    // j_2n lies in Xtilde but not in X.
    for (int n = 1; n <= 3; ++n) {
      const UHMatrix J = UHMatrix::j(F, n);
      CHECK(is_in_Xtilde(J));
      CHECK_FALSE(is_in_X(J));
    }
    // A random integral matrix is not unitary.
    std::mt19937_64 rng(5);
    UHMatrix r(F, 2);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) r(i, k) = ExtScalar::integer(F, static_cast<long>(rng() % 9) - 4);
    CHECK_FALSE(is_in_G(r));
    CHECK_FALSE(is_in_X(r));
    // Hermitian but not unitary.
    UHMatrix h = make_x_lambda(Partition({1}), F);
    h(0, 0) = ExtScalar::integer(F, 2);
    CHECK_FALSE(is_in_Xtilde(h));
  }
}

TEST_CASE("predicates report exhausted precision", "[padic]") {
  const ExtField F = ExtField::make(3, 32);
  UHMatrix x = UHMatrix::identity(F, 1);
  x(0, 0) = ExtScalar(F, Padic::from_parts(3, 32, 0, 1, 2), Padic::exact_zero(3, 32));
  CHECK_THROWS_AS(is_in_G(x), PrecisionError);
  // A matrix whose unitarity defect is below the available precision.
  UHMatrix y = UHMatrix::identity(F, 1);
  y(0, 0) = ExtScalar(F, Padic::from_parts(3, 32, 0, 1, 5), Padic::exact_zero(3, 32));
  y(1, 1) = ExtScalar(F, Padic::from_parts(3, 32, 0, 1, 5), Padic::exact_zero(3, 32));
  CHECK(is_in_G(y));
  CHECK_THROWS_AS(is_in_G(y, 8), PrecisionError);
}

TEST_CASE("representatives", "[cartan]") {
  const ExtField F3 = ExtField::make(3);
  CHECK(same(make_x_lambda(Partition::zero(3), F3), UHMatrix::identity(F3, 3), 30));
  CHECK_THROWS_AS(make_E(Partition({1}), F3), UsageError);

  const ExtField F2 = ExtField::make(2);
  CHECK_THROWS_AS(make_E(Partition({2}), F2), UsageError);
  const UHMatrix E = make_E(Partition({1}), F2);
  // E_1((1)) = [[pi^-1 (1 - eps), -sqrt(eps)], [sqrt(eps), pi]] with eps = -3.
  CHECK(same(E(0, 0), ExtScalar::integer(F2, 2), 30));
  CHECK(same(E(0, 1), -ExtScalar::sqrt_eps(F2), 30));
  CHECK(same(E(1, 0), ExtScalar::sqrt_eps(F2), 30));
  CHECK(same(E(1, 1), ExtScalar::integer(F2, 2), 30));
  CHECK(is_in_X(E));
  for (int n = 1; n <= 2; ++n) {
    CHECK(is_in_X(make_E(Partition(std::vector<int>(n, 1)), F2)));
    for (int r = 0; r <= n; ++r)
      for (const auto& l : partitions_up_to(r, 3)) {
        const UHMatrix x = make_x_lambda_mu(l, Partition(std::vector<int>(n - r, 1)), F2);
        INFO(rows(x));
        CHECK(is_in_X(x));
      }
  }
  // E_n(mu) is not diagonal and not congruent to a diagonal matrix mod 2.
  CHECK(E(0, 1).valuation() == 0);
}

TEST_CASE("ell_of", "[cartan]") {
  const ExtField F = ExtField::make(5);
  CHECK(ell_of(UHMatrix::identity(F, 2)) == 0);
  CHECK(ell_of(make_x_lambda(Partition({3, 1}), F)) == 3);
  UHMatrix y = UHMatrix::identity(F, 1);
  y(0, 0) = ExtScalar::integer(F, 25);
  y(1, 1) = ExtScalar::integer(F, 5);
  CHECK(ell_of(y) == -1);
  CHECK_THROWS_AS(ell_of(UHMatrix(F, 1)), UsageError);
}

TEST_CASE("random_K", "[cartan]") {
  for (int p : {3, 5}) {
    const ExtField F = ExtField::make(p);
    CHECK(same(random_K(2, F, 0, 1u), UHMatrix::identity(F, 2), 30));
    std::mt19937_64 rng(6);
    for (int n = 1; n <= 3; ++n)
      for (int t = 0; t < 10; ++t) {
        const UHMatrix k = random_K(n, F, 10, rng);
        CHECK(is_in_G(k));
        CHECK(is_integral(k));
        // det k is a unit: elementary divisors all have valuation zero.
        for (int v : smith_valuations(k)) CHECK(v == 0);
      }
    CHECK(same(random_K(2, F, 6, 99u), random_K(2, F, 6, 99u), 30));
  }
  CHECK_THROWS_AS(random_K(1, ExtField::make(2), 3, 1u), UsageError);
}

TEST_CASE("K generators lie in K", "[cartan]") {
  const ExtField F = ExtField::make(3);
  const int n = 3;
  CHECK(is_in_K(kgen::pair_swap(F, n, 0, 2)));
  CHECK(is_in_K(kgen::pair_flip(F, n, 1)));
  CHECK(is_in_K(kgen::elementary(F, n, 0, 2, ExtScalar::rational(F, 4, 7))));
  CHECK(is_in_K(kgen::elementary(F, n, 5, 3, ExtScalar::rational(F, 1, -2))));
  std::vector<ExtScalar> a(n * n, ExtScalar::zero(F));
  a[0] = ExtScalar::rational(F, 0, 5);
  a[1] = ExtScalar::rational(F, 2, 1);
  a[3] = -a[1].conj();
  CHECK(is_in_K(kgen::unipotent(F, n, a)));
  // A non-skew a leaves G.
  a[0] = ExtScalar::integer(F, 1);
  CHECK_FALSE(is_in_G(kgen::unipotent(F, n, a)));
  CHECK_THROWS_AS(kgen::elementary(F, n, 0, 4, ExtScalar::integer(F, 1)), UsageError);
}

TEST_CASE("cartan_lambda examples and K-invariance", "[cartan]") {
  for (int p : {3, 5}) {
    const ExtField F = ExtField::make(p);
    CHECK(cartan_lambda(UHMatrix::identity(F, 3)) == Partition::zero(3));
    for (int n = 1; n <= 3; ++n)
      for (const auto& l : partitions_up_to(n, 4)) CHECK(cartan_lambda(make_x_lambda(l, F)) == l);
    std::mt19937_64 rng(7 + p);
    for (int n = 1; n <= 3; ++n)
      for (int t = 0; t < 40; ++t) {
        const Partition l = random_lambda(rng, n, 3);
        const UHMatrix x = make_x_lambda(l, F).acted_on_by(random_K(n, F, 8, rng));
        CHECK(cartan_lambda(x) == l);
      }
  }
  CHECK_THROWS_AS(cartan_lambda(UHMatrix::j(ExtField::make(3), 2)), UsageError);
  CHECK_THROWS_AS(cartan_lambda(make_E(Partition({1}), ExtField::make(2))), UsageError);
}

TEST_CASE("cartan_reduce recovers lambda with a certified k", "[cartan]") {
  for (int p : {3, 5}) {
    const ExtField F = ExtField::make(p);
    for (int n = 1; n <= 3; ++n)
      for (const auto& l : partitions_up_to(n, 3)) {
        const UHMatrix x = make_x_lambda(l, F);
        const auto r = cartan_reduce(x);
        CHECK(r.lambda == l);
        // k stabilizes x_lambda.
        CHECK(same(x.acted_on_by(r.k), x, 24));
      }
    std::mt19937_64 rng(8 + p);
    for (int n = 1; n <= 3; ++n)
      for (int t = 0; t < 30; ++t) {
        const Partition l = random_lambda(rng, n, 3);
        const UHMatrix x = make_x_lambda(l, F).acted_on_by(random_K(n, F, 8, rng));
        const auto r = cartan_reduce(x);
        CHECK(r.lambda == l);
        CHECK(is_in_K(r.k));
        CHECK(r.residual_digits >= F.N - 8);
        CHECK(same(x.acted_on_by(r.k), make_x_lambda(l, F), F.N - 8));
      }
  }
}

TEST_CASE("cartan_reduce n = 1 worked example", "[cartan]") {
  // x = [[a, b sqrt(eps)], [-b sqrt(eps), p^-l]] with a p^-l + b^2 eps = 1;
  // [[1, -b p^l sqrt(eps)], [0, 1]] . x = Diag(p^l, p^-l).
  const int p = 3, l = 2;
  const ExtField F = ExtField::make(p);
  const BigRat b = rat(1, p), c = rat(1, p * p);
  BigRat a = (1 - b * b * F.eps) / c;
  a.canonicalize();
  UHMatrix x(F, 1);
  x(0, 0) = ExtScalar::rational(F, a);
  x(0, 1) = ExtScalar::rational(F, 0, b);
  x(1, 0) = ExtScalar::rational(F, 0, -b);
  x(1, 1) = ExtScalar::rational(F, c);
  REQUIRE(is_in_X(x));
  UHMatrix g = UHMatrix::identity(F, 1);
  g(0, 1) = ExtScalar::rational(F, 0, -b * p * p);
  CHECK(is_in_K(g));
  CHECK(same(x.acted_on_by(g), make_x_lambda(Partition({l}), F), 28));
  const auto r = cartan_reduce(x);
  CHECK(r.lambda == Partition({l}));
  CHECK(cartan_lambda(x) == Partition({l}));
}

TEST_CASE("cartan_reduce exercises the off-diagonal and anti-diagonal cases", "[cartan]") {
  const ExtField F = ExtField::make(3);
  // Anti-diagonal with residues +1 and -1: all minimal entries on the anti-diagonal.
  UHMatrix x(F, 2);
  x(0, 3) = x(3, 0) = ExtScalar::integer(F, 1);
  x(1, 2) = x(2, 1) = ExtScalar::integer(F, -1);
  REQUIRE(is_in_X(x));
  auto r = cartan_reduce(x);
  CHECK(r.lambda == Partition({0, 0}));
  CHECK(r.trace.front() == 'D');

  // A hyperbolic lower block: minimal entries off the diagonal.
  std::mt19937_64 rng(9);
  int found = 0;
  for (int t = 0; t < 4000 && found < 5; ++t) {
    const int n = 2;
    const Partition l = random_lambda(rng, n, 2);
    UHMatrix k = UHMatrix::identity(F, n);
    for (int w = 0; w < 3; ++w) {
      const int i = static_cast<int>(rng() % n), j = (i + 1) % n;
      const bool lower = rng() % 2;
      const ExtScalar c = rng() % 2 ? ExtScalar::integer(F, 1) : ExtScalar::sqrt_eps(F);
      k = kgen::elementary(F, n, lower ? 3 - i : i, lower ? 3 - j : j, c) * k;
      if (rng() % 2) k = kgen::pair_flip(F, n, static_cast<int>(rng() % n)) * k;
    }
    const UHMatrix y = make_x_lambda(l, F).acted_on_by(k);
    r = cartan_reduce(y);
    CHECK(r.lambda == l);
    if (r.trace.find('B') != std::string::npos) ++found;
  }
  CHECK(found == 5);
}

TEST_CASE("g_orbit_class", "[cartan]") {
  for (int p : {3, 5}) {
    const ExtField F = ExtField::make(p);
    for (int n = 1; n <= 3; ++n) {
      CHECK(g_orbit_class(UHMatrix::identity(F, n)) == 0);
      std::vector<int> one(n, 0);
      one[0] = 1;
      CHECK(g_orbit_class(make_x_lambda(Partition(one), F)) == 1);
      for (const auto& l : partitions_up_to(n, 4)) CHECK(g_orbit_class(make_x_lambda(l, F)) == l.size() % 2);
    }
    std::mt19937_64 rng(10 + p);
    for (int n = 1; n <= 3; ++n)
      for (int t = 0; t < 20; ++t) {
        const Partition l = random_lambda(rng, n, 3);
        const UHMatrix x = make_x_lambda(l, F).acted_on_by(random_K(n, F, 8, rng));
        CHECK(g_orbit_class(x) == l.size() % 2);
      }
  }
  // Residue characteristic 2: parity of |lambda| + |mu|.
  const ExtField F2 = ExtField::make(2);
  CHECK(g_orbit_class(UHMatrix::identity(F2, 2)) == 0);
  CHECK(g_orbit_class(make_x_lambda(Partition({1, 0}), F2)) == 1);
  for (int n = 1; n <= 2; ++n)
    for (int r = 0; r <= n; ++r)
      for (const auto& l : partitions_up_to(r, 3)) {
        const Partition mu(std::vector<int>(n - r, 1));
        CHECK(g_orbit_class(make_x_lambda_mu(l, mu, F2)) == (l.size() + mu.size()) % 2);
      }
}

TEST_CASE("n = 1 valuation distribution", "[cartan][oracle]") {
  CHECK(n1_valuation_distribution(0, 3) == std::map<int, BigRat>{{0, rat(1)}});
  CHECK(n1_valuation_distribution(1, 3) == std::map<int, BigRat>{{-1, rat(3, 4)}, {1, rat(1, 4)}});
  // Closed masses: 1/(1+1/q) at -l, (1-1/q) q^-r/(1+1/q) at -l+2r, q^-l/(1+1/q) at l.
  for (int p : {3, 5, 7})
    for (int l = 0; l <= 3; ++l) {
      const BigRat q(p), z = 1 / (1 + 1 / q);
      std::map<int, BigRat> want;
      if (l == 0) {
        want[0] = 1;
      } else {
        want[-l] = z;
        BigRat qr = 1;
        for (int r = 1; r < l; ++r) {
          qr /= q;
          want[-l + 2 * r] = (1 - 1 / q) * qr * z;
        }
        want[l] = qr / q * z;
      }
      for (auto& [m, w] : want) w.canonicalize();
      const auto got = n1_valuation_distribution(l, p);
      CHECK(got == want);
      BigRat total = 0;
      for (const auto& [m, w] : got) {
        CHECK(sgn(w) >= 0);
        total += w;
      }
      CHECK(total == 1);
    }
  CHECK_THROWS_AS(n1_valuation_distribution(1, 2), UsageError);
}

TEST_CASE("n = 1 resummation reproduces the closed form", "[cartan][oracle]") {
  for (int p : {3, 5})
    for (int l = 0; l <= 4; ++l) CHECK(n1_resummation_matches(l, p));
}
