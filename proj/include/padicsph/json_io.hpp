#pragma once
// JSON forms used by the command-line tool. Requires nlohmann/json.
//
//   RatF            "(c*u^k + ...)/(c*u^k + ...)"
//   LaurentPoly     [{"exp":[...], "coef":"<RatF>"}, ...] in exponent order
//   NumericPoly     {"n":N, "terms":[{"exp":[...], "coef":[re, im]}, ...]}
//   SchwartzElement {"n":N, "support":[{"lambda":[...], "coef":[re, im]}, ...]}
//   UHMatrix        {"p":P, "n":N, "prec":D, "entries":[[["a","b"], ...], ...]}
//                   entry (i,k) is a + b sqrt(eps), a and b rational strings

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "cartan.hpp"
#include "errors.hpp"
#include "laurent.hpp"
#include "plancherel.hpp"
#include "weyl.hpp"

namespace padicsph::json_io {

using json = nlohmann::ordered_json;

inline json to_json(const RatF& f) { return f.to_string(); }

inline json to_json(const LaurentPoly& f) {
  json a = json::array();
  for (const auto& [e, c] : f.terms()) a.push_back({{"exp", e}, {"coef", c.to_string()}});
  return a;
}

inline json to_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline json to_json(const NumericPoly& f) {
  json t = json::array();
  for (const auto& [e, c] : f.terms()) t.push_back({{"exp", e}, {"coef", to_json(c)}});
  return {{"n", f.rank()}, {"terms", t}};
}

inline json to_json(const Partition& l) { return l.parts(); }

inline json to_json(const SchwartzElement& phi) {
  json s = json::array();
  for (const auto& [l, c] : phi.support) s.push_back({{"lambda", l.parts()}, {"coef", to_json(c)}});
  return {{"n", phi.n}, {"support", s}};
}

/// "3,1,0" or "3 1 0" -> (3,1,0), padded with zeros to rank n when n > 0.
inline Partition parse_partition(const std::string& s, int n = 0) {
  std::vector<int> parts;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    std::istringstream words(tok);
    std::string w;
    while (words >> w) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(w, &used);
      } catch (...) {
        throw UsageError("bad partition entry '" + w + "'");
      }
      if (used != w.size()) throw UsageError("bad partition entry '" + w + "'");
      parts.push_back(v);
    }
  }
  if (n > 0) {
    if (static_cast<int>(parts.size()) > n) throw UsageError("partition has more than n parts");
    parts.resize(n, 0);
  }
  if (parts.empty()) throw UsageError("empty partition");
  return Partition(parts);
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline cplx parse_cplx(const json& c) {
  if (c.is_number()) return {c.get<double>(), 0};
  if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number())
    return {c[0].get<double>(), c[1].get<double>()};
  throw UsageError("coefficient must be a number or [re, im]");
}

inline std::vector<int> parse_ints(const json& a, const char* what) {
  if (!a.is_array()) throw UsageError(std::string(what) + " must be an array");
  std::vector<int> v;
  for (const auto& x : a) {
    if (!x.is_number_integer()) throw UsageError(std::string(what) + " entries must be integers");
    v.push_back(x.get<int>());
  }
  return v;
}

inline BigRat parse_rational(const json& x) {
  std::string s;
  if (x.is_string()) s = x.get<std::string>();
  else if (x.is_number_integer()) s = std::to_string(x.get<long long>());
  else throw UsageError("matrix entries must be rational strings");
  BigRat r;
  try {
    r = BigRat(s);
  } catch (const std::invalid_argument&) {
    throw UsageError("bad rational '" + s + "'");
  }
  if (sgn(r.get_den()) == 0) throw UsageError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace detail

inline SchwartzElement parse_schwartz(const json& j) {
  SchwartzElement phi;
  phi.n = j.contains("n") ? j.at("n").get<int>() : 0;
  for (const auto& e : detail::field(j, "support")) {
    Partition l(detail::parse_ints(detail::field(e, "lambda"), "lambda"));
    if (phi.n == 0) phi.n = l.rank();
    if (l.rank() != phi.n) throw UsageError("support partitions must all have rank n");
    phi.support[l] += detail::parse_cplx(detail::field(e, "coef"));
  }
  if (phi.n < 1) throw UsageError("cannot infer n from an empty support");
  return phi;
}

inline NumericPoly parse_numeric_poly(const json& j) {
  const int n = detail::field(j, "n").get<int>();
  if (n < 1) throw UsageError("n must be positive");
  NumericPoly f(n);
  for (const auto& t : detail::field(j, "terms")) {
    auto e = detail::parse_ints(detail::field(t, "exp"), "exp");
    if (static_cast<int>(e.size()) != n) throw UsageError("exponent length must equal n");
    f.add_term(e, detail::parse_cplx(detail::field(t, "coef")));
  }
  return f;
}

inline UHMatrix parse_matrix(const json& j) {
  const int p = detail::field(j, "p").get<int>();
  const int n = detail::field(j, "n").get<int>();
  const int prec = j.contains("prec") ? j.at("prec").get<int>() : 32;
  if (n < 1) throw UsageError("n must be positive");
  const ExtField F = ExtField::make(p, prec);
  const json& rows = detail::field(j, "entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != 2 * n) throw UsageError("entries must have 2n rows");
  UHMatrix x(F, n);
  for (int i = 0; i < 2 * n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != 2 * n)
      throw UsageError("entries must have 2n columns");
    for (int k = 0; k < 2 * n; ++k) {
      const json& e = rows[i][k];
      if (!e.is_array() || e.size() != 2) throw UsageError("each entry is [\"a\", \"b\"]");
      x(i, k) = ExtScalar::rational(F, detail::parse_rational(e[0]), detail::parse_rational(e[1]));
    }
  }
  return x;
}

/// Entries rendered through their rational reconstruction.
inline json to_json(const UHMatrix& x) {
  json rows = json::array();
  for (int i = 0; i < x.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < x.dim(); ++k)
      row.push_back({x(i, k).re().to_rational().get_str(), x(i, k).im().to_rational().get_str()});
    rows.push_back(row);
  }
  return {{"p", x.field().p}, {"n", x.n()}, {"prec", x.field().N}, {"entries", rows}};
}

}  // namespace padicsph::json_io
