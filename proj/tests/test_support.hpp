#pragma once
// Shared generators for the unit tests.

#include <random>

#include "padicsph/exact_field.hpp"
#include "padicsph/laurent.hpp"

namespace testsupport {

using namespace padicsph;

inline UPoly random_upoly(std::mt19937_64& rng, int max_deg, int coef_range = 5) {
  std::uniform_int_distribution<int> deg(0, max_deg), c(-coef_range, coef_range),
      d(1, 3);
  std::vector<BigRat> v(deg(rng) + 1);
  for (auto& x : v) {
    x = BigRat(c(rng), d(rng));
    x.canonicalize();
  }
  return UPoly::from_coeffs(v);
}

inline RatF random_ratf(std::mt19937_64& rng, int max_deg = 3) {
  UPoly den;
  do den = random_upoly(rng, max_deg); while (den.is_zero());
  return RatF::normalize(random_upoly(rng, max_deg), den);
}

inline RatF random_nonzero_ratf(std::mt19937_64& rng, int max_deg = 3) {
  RatF r;
  do r = random_ratf(rng, max_deg); while (r.is_zero());
  return r;
}

/// Random Laurent polynomial with small integer-polynomial coefficients.
inline LaurentPoly random_laurent(std::mt19937_64& rng, int n, int terms, int span,
                                  int u_deg = 2) {
  std::uniform_int_distribution<int> e(-span, span);
  LaurentPoly f(n);
  for (int k = 0; k < terms; ++k) {
    Exponent x(n);
    for (auto& v : x) v = e(rng);
    f.add_term(x, RatF(random_upoly(rng, u_deg)));
  }
  return f;
}

}  // namespace testsupport

#ifdef CATCH_VERSION_MAJOR
template <>
struct Catch::StringMaker<padicsph::RatF> {
  static std::string convert(const padicsph::RatF& f) { return f.to_string(); }
};
template <>
struct Catch::StringMaker<padicsph::LaurentPoly> {
  static std::string convert(const padicsph::LaurentPoly& f) { return f.to_string(); }
};
#endif
