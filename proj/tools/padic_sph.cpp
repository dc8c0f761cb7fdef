// padic_sph: command-line front end.
//
// Exit codes: 0 success, 1 a mathematical identity failed, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "padicsph/json_io.hpp"
#include "padicsph/padicsph.hpp"

using namespace padicsph;
using json_io::json;

namespace {

constexpr int kExitIdentity = 1;
constexpr int kExitUsage = 2;

struct IdentityFailure {
  std::string what;
  json report;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("invalid JSON in '" + path + "': " + e.what());
  }
}

/// "0.3", "0.3:1.1" -> complex numbers, comma separated.
std::vector<cplx> parse_complex_list(const std::string& s) {
  std::vector<cplx> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const auto colon = tok.find(':');
    try {
      std::size_t used = 0;
      double re = std::stod(tok.substr(0, colon), &used), im = 0;
      if (colon != std::string::npos) im = std::stod(tok.substr(colon + 1));
      out.emplace_back(re, im);
    } catch (const std::exception&) {
      throw UsageError("bad complex number '" + tok + "'");
    }
  }
  return out;
}

json factors_json(const FactorSystem& f) {
  json a = json::array();
  for (const auto& x : f.factors())
    a.push_back({{"a", x.a.to_string()}, {"b", x.b.to_string()}, {"exp", x.exp}, {"mult", x.mult}});
  return a;
}

void print_text(const json& j) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_string()) std::cout << it.key() << ": " << it.value().get<std::string>() << "\n";
    else std::cout << it.key() << ": " << it.value().dump() << "\n";
  }
}

void emit(const json& j, const std::string& format) {
  if (format == "text") print_text(j);
  else std::cout << j.dump(2) << "\n";
}

double max_rel_err_of_gram(const std::vector<std::vector<cplx>>& G, const std::vector<double>& winv) {
  double e = 0;
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t k = 0; k < G.size(); ++k)
      e = std::max(e, std::abs(G[i][k] - (i == k ? winv[i] : 0.0)) / std::sqrt(winv[i] * winv[k]));
  return e;
}

int default_grid(int n) { return n == 1 ? 256 : n == 2 ? 128 : 32; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical functions on unitary hermitian matrices: exact and p-adic computations"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (overrides PADIC_SPH_THREADS)")->check(CLI::NonNegativeNumber);

  // hl
  auto* hl = app.add_subcommand("hl", "Hall-Littlewood polynomial P_lambda in monomials");
  int hl_n = 0;
  std::string hl_lambda, hl_ts, hl_tl;
  hl->add_option("--n", hl_n, "Rank")->required()->check(CLI::Range(1, 6));
  hl->add_option("--lambda", hl_lambda, "Partition, e.g. \"2,1\"")->required();
  hl->add_option("--ts", hl_ts, "Short-root parameter as an expression in u (default -u^2)");
  hl->add_option("--tl", hl_tl, "Long-root parameter as an expression in u (default u^2)");

  // spherical
  auto* sph = app.add_subcommand("spherical", "Explicit formula for omega(x_lambda; z)");
  int sph_n = 0;
  std::string sph_lambda, sph_eval;
  double sph_q = 3;
  sph->add_option("--n", sph_n, "Rank")->required()->check(CLI::Range(1, 5));
  sph->add_option("--lambda", sph_lambda, "Partition")->required();
  sph->add_option("--eval", sph_eval, "Point z as comma-separated re or re:im values");
  sph->add_option("--q", sph_q, "Residue field size for --eval")->check(CLI::PositiveNumber);

  // gram
  auto* gram = app.add_subcommand("gram", "Gram matrix of P_lambda under d(mu)");
  int gram_n = 0, gram_maxdeg = 3, gram_grid = 0;
  double gram_q = 3;
  gram->add_option("--n", gram_n, "Rank")->required()->check(CLI::Range(1, 3));
  gram->add_option("--q", gram_q, "q")->check(CLI::PositiveNumber);
  gram->add_option("--maxdeg", gram_maxdeg, "Largest |lambda|")->check(CLI::Range(0, 8));
  gram->add_option("--grid", gram_grid, "Grid points per dimension")->check(CLI::Range(1, 4096));

  // transform
  auto* tr = app.add_subcommand("transform", "Spherical Fourier transform of a Schwartz element");
  std::string tr_in;
  double tr_q = 3;
  tr->add_option("--in", tr_in, "SchwartzElement JSON file")->required();
  tr->add_option("--q", tr_q, "q")->check(CLI::PositiveNumber);

  // invert
  auto* inv = app.add_subcommand("invert", "Recover phi(lambda) from a transform");
  std::string inv_in;
  double inv_q = 3;
  int inv_grid = 0, inv_maxdeg = -1;
  inv->add_option("--in", inv_in, "Transform JSON (from `transform`) or SchwartzElement JSON")->required();
  inv->add_option("--q", inv_q, "q")->check(CLI::PositiveNumber);
  inv->add_option("--grid", inv_grid, "Grid points per dimension")->check(CLI::Range(1, 4096));
  inv->add_option("--maxdeg", inv_maxdeg, "Recover all lambda with |lambda| <= maxdeg")->check(CLI::Range(0, 12));

  // cartan
  auto* car = app.add_subcommand("cartan", "Cartan invariant and orbit class of a matrix in X");
  std::string car_in;
  bool car_show_k = false;
  car->add_option("--in", car_in, "Matrix JSON file")->required();
  car->add_flag("--show-k", car_show_k, "Print the reducing element k");

  // selfcheck
  auto* sc = app.add_subcommand("selfcheck", "Run invariant suites");
  std::string sc_suite = "all";
  int sc_n = 1;
  std::uint64_t sc_seed = 1;
  std::vector<std::string> suites = selfcheck_suites();
  suites.push_back("all");
  sc->add_option("--suite", sc_suite, "Suite name or all")->check(CLI::IsMember(suites));
  sc->add_option("--n", sc_n, "Rank")->check(CLI::Range(1, 3));
  sc->add_option("--seed", sc_seed, "Random seed");

  for (auto* s : app.get_subcommands({})) s->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (threads > 0) setenv("PADIC_SPH_THREADS", std::to_string(threads).c_str(), 1);

  try {
    if (hl->parsed()) {
      const Partition l = json_io::parse_partition(hl_lambda, hl_n);
      HLParams t = HLParams::standard();
      if (!hl_ts.empty()) t.t_s = parse_ratf(hl_ts);
      if (!hl_tl.empty()) t.t_l = parse_ratf(hl_tl);
      const LaurentPoly P = hl_p(l, t);
      json out{{"lambda", l.parts()}, {"ts", t.t_s.to_string()}, {"tl", t.t_l.to_string()},
               {"W_lambda", poincare_W(l, t).to_string()}, {"P", json_io::to_json(P)}};
      if (format == "text") out["P"] = P.to_string();
      emit(out, format);
      return 0;
    }

    if (sph->parsed()) {
      const Partition l = json_io::parse_partition(sph_lambda, sph_n);
      const OmegaExplicit om = omega_explicit(l);
      json out{{"lambda", l.parts()},
               {"prefactor", om.prefactor.to_string()},
               {"G_inverse", factors_json(om.G_inverse)},
               {"poly", json_io::to_json(om.poly)},
               {"c_lambda", c_lambda(l).to_string()},
               {"w_lambda", w_lambda(l).to_string()}};
      if (!sph_eval.empty()) {
        if (sph_q <= 1) throw UsageError("q must exceed 1");
        const auto z = parse_complex_list(sph_eval);
        if (static_cast<int>(z.size()) != sph_n) throw UsageError("--eval needs n coordinates");
        out["q"] = sph_q;
        out["value"] = json_io::to_json(om.eval(EvalPoint{z, sph_q}));
      }
      if (format == "text") out["poly"] = om.poly.to_string();
      emit(out, format);
      return 0;
    }

    if (gram->parsed()) {
      if (gram_q <= 1) throw UsageError("q must exceed 1");
      const Quadrature Q({gram_n, gram_grid ? gram_grid : default_grid(gram_n), gram_q});
      const auto parts = partitions_up_to(gram_n, gram_maxdeg);
      std::vector<std::vector<cplx>> vals;
      std::vector<double> winv;
      for (const auto& l : parts) {
        vals.push_back(Q.values(hl_p(l, HLParams::standard())));
        winv.push_back(w_lambda(l).inverse().eval(Q.u0()).real());
      }
      std::vector<std::vector<cplx>> G(parts.size(), std::vector<cplx>(parts.size()));
      json rows = json::array(), pj = json::array();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        pj.push_back(parts[i].parts());
        json row = json::array();
        for (std::size_t k = 0; k < parts.size(); ++k) {
          G[i][k] = Q.inner(vals[i], vals[k]);
          row.push_back(json_io::to_json(G[i][k]));
        }
        rows.push_back(row);
      }
      emit({{"n", gram_n}, {"q", gram_q}, {"grid", Q.grid().N}, {"partitions", pj}, {"gram", rows},
            {"w_inverse", winv}, {"mass", Q.mass()}, {"max_rel_err", max_rel_err_of_gram(G, winv)}},
           format);
      return 0;
    }

    if (tr->parsed()) {
      if (tr_q <= 1) throw UsageError("q must exceed 1");
      const SchwartzElement phi = json_io::parse_schwartz(read_json_file(tr_in));
      json out = json_io::to_json(fourier(phi, tr_q));
      out["q"] = tr_q;
      emit(out, format);
      return 0;
    }

    if (inv->parsed()) {
      if (inv_q <= 1) throw UsageError("q must exceed 1");
      const json in = read_json_file(inv_in);
      const bool from_phi = in.contains("support");
      SchwartzElement phi;
      NumericPoly F;
      if (from_phi) {
        phi = json_io::parse_schwartz(in);
        F = fourier(phi, inv_q);
      } else {
        F = json_io::parse_numeric_poly(in);
      }
      const int n = F.rank();
      if (n > 3) throw UsageError("invert supports n <= 3");
      const Quadrature Q({n, inv_grid ? inv_grid : default_grid(n), inv_q});
      int maxdeg = inv_maxdeg;
      if (maxdeg < 0) {
        maxdeg = 0;
        for (const auto& [e, c] : F.terms()) {
          int s = 0;
          for (int x : e) s += std::abs(x);
          maxdeg = std::max(maxdeg, s);
        }
        for (const auto& [l, c] : phi.support) maxdeg = std::max(maxdeg, l.size());
      }
      const auto ls = partitions_up_to(n, maxdeg);
      const auto rec = invert(F, ls, Q);
      json coeffs = json::array();
      double err = 0, scale = 0;
      for (const auto& [l, c] : phi.support) scale = std::max(scale, std::abs(c));
      for (const auto& l : ls) {
        coeffs.push_back({{"lambda", l.parts()}, {"coef", json_io::to_json(rec.at(l))}});
        if (from_phi) {
          const cplx want = phi.support.count(l) ? phi.support.at(l) : cplx(0);
          err = std::max(err, std::abs(rec.at(l) - want));
        }
      }
      json out{{"n", n}, {"q", inv_q}, {"grid", Q.grid().N}, {"recovered", coeffs}};
      if (from_phi) {
        const auto [lhs, rhs] = plancherel_check(phi, phi, Q);
        const double rel = scale > 0 ? err / scale : err;
        const double prel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
        out["max_rel_err"] = rel;
        out["plancherel"] = {{"lhs", json_io::to_json(lhs)}, {"rhs", json_io::to_json(rhs)}, {"rel_err", prel}};
        if (rel > 1e-6) throw IdentityFailure{"inversion recovers phi", out};
        if (prel > 1e-6) throw IdentityFailure{"Plancherel identity", out};
      }
      emit(out, format);
      return 0;
    }

    if (car->parsed()) {
      const UHMatrix x = json_io::parse_matrix(read_json_file(car_in));
      const ExtField& F = x.field();
      if (!is_in_X(x)) throw UsageError("input matrix is not in X");
      json out{{"p", F.p}, {"n", x.n()}, {"prec", F.N}, {"eps", F.eps}, {"ell", ell_of(x)},
               {"orbit_class", g_orbit_class(x)}};
      if (F.p != 2) {
        const Partition l = cartan_lambda(x);
        const CartanReduction r = cartan_reduce(x);
        out["lambda"] = l.parts();
        out["reduction"] = {{"residual_digits", r.residual_digits}, {"trace", r.trace}};
        if (g_orbit_class(x) != l.size() % 2)
          throw IdentityFailure{"orbit class equals |lambda| mod 2", out};
        if (car_show_k) out["k"] = json_io::to_json(r.k);
      } else {
        out["lambda"] = nullptr;
      }
      emit(out, format);
      return 0;
    }

    if (sc->parsed()) {
      std::vector<std::string> run = sc_suite == "all" ? selfcheck_suites() : std::vector<std::string>{sc_suite};
      json reports = json::array();
      bool ok = true;
      std::string first_failure;
      for (const auto& s : run) {
        if (s == "plancherel" && sc_n > 2) continue;
        const SuiteReport r = run_selfcheck(s, sc_n, sc_seed);
        json checks = json::array();
        for (const auto& c : r.checks) {
          checks.push_back({{"name", c.name}, {"passed", c.passed}, {"failed", c.failed}});
          if (c.failed && first_failure.empty()) first_failure = s + ": " + c.name;
        }
        ok = ok && r.ok();
        reports.push_back({{"suite", s}, {"n", sc_n}, {"passed", r.passed()}, {"failed", r.failed()},
                           {"status", r.ok() ? "pass" : "fail"}, {"checks", checks}});
      }
      if (format == "text") {
        for (const auto& r : reports) {
          std::cout << r["suite"].get<std::string>() << " n=" << sc_n << ": " << r["status"].get<std::string>()
                    << " (" << r["passed"] << " passed, " << r["failed"] << " failed)\n";
          for (const auto& c : r["checks"])
            std::cout << "  " << (c["failed"] == 0 ? "ok  " : "FAIL") << " " << c["name"].get<std::string>() << " ["
                      << c["passed"] << "/" << c["passed"].get<int>() + c["failed"].get<int>() << "]\n";
        }
      } else {
        std::cout << json{{"status", ok ? "pass" : "fail"}, {"suites", reports}}.dump(2) << "\n";
      }
      if (!ok) {
        std::cerr << "identity violated: " << first_failure << "\n";
        return kExitIdentity;
      }
      return 0;
    }
  } catch (const IdentityFailure& f) {
    emit(f.report, format);
    std::cerr << "identity violated: " << f.what << "\n";
    return kExitIdentity;
  } catch (const IdentityError& e) {
    std::cerr << "identity violated: " << e.what() << "\n";
    return kExitIdentity;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PrecisionError& e) {
    std::cerr << "error: precision exhausted: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ArithmeticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
