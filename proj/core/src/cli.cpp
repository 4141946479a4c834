#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "drinfeld/reports.hpp"

namespace drinfeld {

namespace {

bool is_decimal(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

std::uint64_t parse_uint(const std::string& flag, const std::string& s) {
  if (!is_decimal(s) || s.size() > 18) throw UsageError(flag + " expects a positive integer, got '" + s + "'");
  return std::stoull(s);
}

// q = p^e with p prime.
std::pair<std::uint32_t, unsigned> split_prime_power(std::uint64_t q) {
  std::uint64_t p = 2;
  while (p * p <= q && q % p) ++p;
  if (p * p > q) p = q;  // q itself is prime
  unsigned e = 0;
  std::uint64_t m = q;
  while (q > 1 && m % p == 0) {
    m /= p;
    ++e;
  }
  if (q < 2 || m != 1 || p > 0xffffffffULL) throw UsageError("q = " + std::to_string(q) + " is not a prime power");
  return {std::uint32_t(p), e};
}

SparsePoly parse_prime(const FieldPtr& fq, const std::string& flag, const std::string& text) {
  SparsePoly f = SparsePoly::parse(fq, text);
  if (!f.is_monic() || f.degree() < 1 || !is_irreducible(f)) throw UsageError(flag + " must be a monic prime of A, got '" + text + "'");
  return f;
}

Place parse_place(const FieldPtr& fq, const std::string& text) {
  if (text == "inf" || text == "infinity") return Place::infinity();
  return Place::finite(parse_prime(fq, "--place", text));
}

void emit(const std::string& json, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << json << "\n";
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot open --out file '" + out_path + "'");
  f << json << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Drinfeld modules phi_T = T + tau^{r-1} + T^{q-1} tau^r: Frobenius, torsion and Galois statistics",
               "drinfeld"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string q_s, p_s, e_s, r_s, coeffs_s, out_path, max_deg_s;
  std::uint64_t seed = 1, budget = 50'000'000;
  unsigned threads = 1;
  bool timings = false;
  app.add_option("--q", q_s, "Field size q = p^e");
  app.add_option("--p", p_s, "Characteristic, or the prime of A for charpoly/torsion");
  app.add_option("--e", e_s, "Degree of F_q over F_p");
  app.add_option("--r", r_s, "Rank (default family needs an odd prime)");
  app.add_option("--coeffs", coeffs_s, "Custom phi_T coefficients g_1,...,g_r (g_0 = T)");
  app.add_option("--seed", seed, "Seed for randomized property checks");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1U, 256U));
  app.add_option("--budget", budget, "Enumeration cap");
  app.add_option("--out", out_path, "Write JSON here instead of stdout");
  app.add_option("--max-deg", max_deg_s, "Largest prime degree to sample");
  app.add_flag("--timings", timings, "Print suite wall times to stderr");

  std::string a_s, l_s, prime_s, place_s = "inf", bounds_s = "sharp", suite_s = "all", backend_s = "auto";
  double tv_threshold = 0.1;
  auto* phi = app.add_subcommand("phi", "Print phi_a");
  phi->add_option("--a", a_s, "Element of A")->required();
  auto* charpoly = app.add_subcommand("charpoly", "Characteristic polynomial of Frobenius at a prime");
  charpoly->add_option("--prime", prime_s, "Prime of A (alias of a non-numeric --p)");
  charpoly->add_option("--l", l_s, "Also reduce mod this prime and check the determinant law");
  charpoly->add_option("--bounds", bounds_s, "Degree bounds")->check(CLI::IsMember({"sharp", "relaxed"}));
  auto* torsion = app.add_subcommand("torsion", "Frobenius on ell-torsion over its splitting field");
  torsion->add_option("--prime", prime_s, "Prime of A (alias of a non-numeric --p)");
  torsion->add_option("--l", l_s, "Torsion prime ell")->required();
  auto* newton = app.add_subcommand("newton", "Newton polygon of phi_a(x)/x at a place");
  newton->add_option("--a", a_s, "Element of A")->required();
  newton->add_option("--place", place_s, "inf, T or a monic prime");
  auto* inertia = app.add_subcommand("inertia", "Inertia order prediction at (T)");
  inertia->add_option("--l", l_s, "Torsion prime ell")->required();
  auto* sample = app.add_subcommand("sample", "Sample Frobenius char polys mod ell");
  sample->add_option("--l", l_s, "Torsion prime ell")->required();
  sample->add_option("--tv-threshold", tv_threshold, "TV distance threshold");
  auto* oracle = app.add_subcommand("oracle-gl", "Char-poly distribution on GL_r(F_ell)");
  oracle->add_option("--l", l_s, "Prime ell (default T, i.e. F_q)");
  oracle->add_option("--backend", backend_s, "Counting backend")->check(CLI::IsMember({"auto", "enumerate", "formula"}));
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite_s, "Suite name or all");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    Config cfg;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.budget = budget;
    const bool prime_cmd = charpoly->parsed() || torsion->parsed();
    // --p names the prime of A for charpoly/torsion unless it is numeric.
    if (!p_s.empty() && prime_cmd && !is_decimal(p_s)) {
      if (!prime_s.empty()) throw UsageError("give the prime once, via --p or --prime");
      prime_s = p_s;
      p_s.clear();
    }
    if (!q_s.empty()) {
      const auto [p, e] = split_prime_power(parse_uint("--q", q_s));
      if (!p_s.empty() && parse_uint("--p", p_s) != p) throw UsageError("--p disagrees with --q");
      if (!e_s.empty() && parse_uint("--e", e_s) != e) throw UsageError("--e disagrees with --q");
      cfg.p = p;
      cfg.e = e;
    } else {
      if (!p_s.empty()) cfg.p = std::uint32_t(parse_uint("--p", p_s));
      if (!e_s.empty()) cfg.e = unsigned(parse_uint("--e", e_s));
    }
    if (!coeffs_s.empty()) {
      std::vector<std::string> g;
      std::stringstream ss(coeffs_s);
      for (std::string item; std::getline(ss, item, ',');) g.push_back(item);
      cfg.coefficients = g;
      cfg.r = unsigned(g.size());
    }
    if (!r_s.empty()) cfg.r = unsigned(parse_uint("--r", r_s));
    if (!max_deg_s.empty()) cfg.max_deg = unsigned(parse_uint("--max-deg", max_deg_s));
    cfg.validate();
    const FieldPtr fq = cfg.field();
    for (const auto& w : cfg.warnings()) err << "warning: " << w << "\n";

    if (phi->parsed()) {
      emit(phi_json(cfg, SparsePoly::parse(fq, a_s)), out_path, out);
    } else if (charpoly->parsed()) {
      if (prime_s.empty()) throw UsageError("charpoly needs the prime via --p or --prime");
      const SparsePoly prime = SparsePoly::parse(fq, prime_s);
      std::optional<SparsePoly> ell;
      if (!l_s.empty()) ell = parse_prime(fq, "--l", l_s);
      emit(charpoly_json(cfg, prime, ell, bounds_s == "relaxed" ? DegreeBounds::Relaxed : DegreeBounds::Sharp),
           out_path, out);
    } else if (torsion->parsed()) {
      if (prime_s.empty()) throw UsageError("torsion needs the prime via --p or --prime");
      emit(torsion_json(cfg, parse_prime(fq, "--p", prime_s), parse_prime(fq, "--l", l_s)), out_path, out);
    } else if (newton->parsed()) {
      emit(newton_json(cfg, SparsePoly::parse(fq, a_s), parse_place(fq, place_s)), out_path, out);
    } else if (inertia->parsed()) {
      const SparsePoly ell = parse_prime(fq, "--l", l_s);
      const std::string j = inertia_json(cfg, ell);
      emit(j, out_path, out);
      if (!inertia_order_prediction(cfg.module(), ell).matches) return 1;
    } else if (sample->parsed()) {
      if (!cfg.max_deg) throw UsageError("sample needs --max-deg");
      SampleOptions opt;
      opt.threads = cfg.threads;
      opt.budget = cfg.budget;
      opt.tv_threshold = tv_threshold;
      const SampleReport rep = sample_frobenii(cfg.module(), parse_prime(fq, "--l", l_s), *cfg.max_deg, opt);
      emit(sample_json(cfg, rep, surjectivity_evidence(rep)), out_path, out);
    } else if (oracle->parsed()) {
      const ResidueField fl(l_s.empty() ? SparsePoly::T(fq) : parse_prime(fq, "--l", l_s));
      const GLBackend b = backend_s == "enumerate" ? GLBackend::Enumerate
                          : backend_s == "formula" ? GLBackend::Formula
                                                   : GLBackend::Auto;
      emit(oracle_gl_json(cfg, gl_charpoly_distribution(cfg.r, fl.field(), b, cfg.budget, cfg.threads), fl),
           out_path, out);
    } else if (verify->parsed()) {
      const auto outcomes = run_suites(cfg, suite_s);
      emit(verify_json(cfg, outcomes), out_path, out);
      bool pass = true;
      for (const auto& o : outcomes) {
        pass = pass && o.pass;
        if (timings) err << o.suite << ": " << (o.pass ? "pass" : "FAIL") << " in " << o.wall_seconds << " s\n";
      }
      return pass ? 0 : 1;
    }
    return 0;
  } catch (const ParseError& e) {
    err << "error: malformed polynomial: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace drinfeld
