#include "drinfeld/reports.hpp"

#include <chrono>
#include <numeric>
#include <random>

#include "json.hpp"

namespace drinfeld {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- config

void Config::validate() const {
  if (!fp::is_prime(p)) throw UsageError("p = " + std::to_string(p) + " is not prime");
  if (e == 0) throw UsageError("e must be positive");
  if (r == 0) throw UsageError("r must be positive");
  (void)q();
  if (coefficients) {
    if (coefficients->size() != r) {
      throw UsageError("custom phi_T needs r = " + std::to_string(r) + " coefficients g_1..g_r");
    }
    return;
  }
  if (r < 3 || !fp::is_prime(r)) throw UsageError("the default family needs r an odd prime");
  if (q() < 3) throw UsageError("the default family needs q >= 3");
}

std::uint64_t Config::q() const {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(out, std::uint64_t(p), &out) || out > (1ULL << 31)) throw UsageError("q is too large");
  }
  return out;
}

FieldPtr Config::field() const { return FiniteField::make(p, e, 1); }

DrinfeldModule Config::module() const {
  validate();
  const FieldPtr fq = field();
  if (!coefficients) return DrinfeldModule::default_family(fq, r);
  std::vector<SparsePoly> g{SparsePoly::T(fq)};
  for (const auto& s : *coefficients) g.push_back(SparsePoly::parse(fq, s));
  if (g.back().is_zero()) throw UsageError("g_r must be nonzero");
  return DrinfeldModule(fq, std::move(g));
}

std::vector<std::string> Config::warnings() const {
  std::vector<std::string> out;
  if (q() % r != 1 % r) out.push_back("q is not 1 mod r: surjectivity verdicts are evidence-only");
  return out;
}

// ---------------------------------------------------------------- helpers

namespace {

Json params_json(const Config& cfg) {
  Json j;
  j["p"] = cfg.p;
  j["e"] = cfg.e;
  j["q"] = cfg.q();
  j["r"] = cfg.r;
  if (cfg.coefficients) j["coefficients"] = *cfg.coefficients;
  return j;
}

Json rational_json(const Rational& x) { return Json::array({x.numerator(), x.denominator()}); }

// Coefficients c_0..c_{n-1} of a monic polynomial over F_ell, as residues.
Json monic_coeffs_json(const FieldPoly& f, const ResidueField& fl) {
  Json out = Json::array();
  for (int i = 0; i < f.degree(); ++i) out.push_back(fl.format(f.coeff(std::size_t(i))));
  return out;
}

std::string poly_over_fl(const FieldPoly& f, const ResidueField& fl, const std::string& var = "x") {
  std::string out;
  for (int i = f.degree(); i >= 0; --i) {
    const FieldElem c = f.coeff(std::size_t(i));
    if (c.is_zero()) continue;
    const std::string cs = fl.format(c);
    const bool compound = cs.find_first_of("+-") != std::string::npos;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (!c.is_one()) out += (compound ? "(" + cs + ")" : cs) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

Json skew_terms_json(const SkewA& f) {
  Json out = Json::array();
  for (const auto& t : f.terms()) out.push_back({{"tau", t.exp}, {"coeff", t.coeff.to_string()}});
  return out;
}

Json polygon_json(const NewtonPolygon& np) {
  Json j;
  j["place"] = np.place.to_string();
  Json pts = Json::array();
  for (const auto& [x, y] : np.points) pts.push_back(Json::array({x, y}));
  j["points"] = pts;
  Json segs = Json::array();
  for (const auto& s : np.segments) segs.push_back({{"slope", rational_json(s.slope)}, {"length", s.length}});
  j["segments"] = segs;
  Json roots = Json::array();
  for (const auto& [v, n] : np.root_valuations()) roots.push_back({{"valuation", rational_json(v)}, {"count", n}});
  j["root_valuations"] = roots;
  j["max_denominator"] = np.max_slope_denominator();
  return j;
}

std::int64_t ipow(std::int64_t b, std::int64_t k) {
  std::int64_t out = 1;
  for (std::int64_t i = 0; i < k; ++i) out *= b;
  return out;
}

std::vector<SparsePoly> primes_up_to(const FieldPtr& fq, unsigned max_deg) {
  std::vector<SparsePoly> out;
  for (unsigned d = 1; d <= max_deg; ++d) {
    for (auto& p : primes_of_degree(fq, d)) out.push_back(std::move(p));
  }
  return out;
}

// Largest degree K >= 2 with about q^K / K <= 300 primes of degree K.
unsigned default_prime_degree(std::uint64_t q) {
  unsigned k = 2;
  while (k < 6 && double(ipow(std::int64_t(q), k + 1)) / (k + 1) <= 300.0) ++k;
  return k;
}

// ---------------------------------------------------------------- suites

struct Ctx {
  const Config& cfg;
  const DrinfeldModule& d;
  std::size_t checks = 0;
  std::optional<Json> failure;

  void check(bool ok, Json inputs, const std::string& expected, const std::string& got) {
    ++checks;
    if (!ok && !failure) failure = Json{{"inputs", std::move(inputs)}, {"expected", expected}, {"got", got}};
  }
};

SparsePoly mono(const FieldPtr& fq, std::int64_t k) { return SparsePoly::monomial(fq->one(), k); }

void suite_phi(Ctx& c) {
  const FieldPtr& fq = c.d.base();
  const auto q = std::int64_t(c.d.q());
  const auto r = std::int64_t(c.d.rank());
  const SparsePoly t = SparsePoly::T(fq);
  if (c.d.is_default_family()) {
    // phi_{T^2} = T^2 + (T^{q^{r-1}} + T) t^{r-1} + (T^{q^r+q-1} + T^q) t^r + t^{2r-2}
    //           + (T^{(q-1)q^{r-1}} + T^{q-1}) t^{2r-1} + T^{(q-1)(q^r+1)} t^{2r}
    const std::int64_t qr1 = ipow(q, r - 1), qr = ipow(q, r);
    SkewA want(fq, {{0, mono(fq, 2)},
                    {r - 1, mono(fq, qr1) + t},
                    {r, mono(fq, qr + q - 1) + mono(fq, q)},
                    {2 * r - 2, mono(fq, 0)},
                    {2 * r - 1, mono(fq, (q - 1) * qr1) + mono(fq, q - 1)},
                    {2 * r, mono(fq, (q - 1) * (qr + 1))}});
    const SkewA got = phi_of(c.d, t * t);
    c.check(got == want && got.terms().size() == 6, {{"a", "T^2"}}, want.to_string(), got.to_string());
  }
  // Ring homomorphism on a few products and sums.
  const std::vector<SparsePoly> as{t, t + SparsePoly::from_int(fq, 1), t * t + SparsePoly::from_int(fq, 2)};
  for (const auto& a : as) {
    for (const auto& b : as) {
      const SkewA lhs = phi_of(c.d, a * b), rhs = phi_of(c.d, a) * phi_of(c.d, b);
      c.check(lhs == rhs, {{"a", a.to_string()}, {"b", b.to_string()}, {"law", "phi_ab = phi_a phi_b"}}, rhs.to_string(),
              lhs.to_string());
      const SkewA s = phi_of(c.d, a + b), s2 = phi_of(c.d, a) + phi_of(c.d, b);
      c.check(s == s2, {{"a", a.to_string()}, {"b", b.to_string()}, {"law", "phi_(a+b) = phi_a + phi_b"}},
              s2.to_string(), s.to_string());
    }
  }
}

void suite_leading(Ctx& c) {
  const FieldPtr& fq = c.d.base();
  const auto q = std::int64_t(c.d.q());
  const auto r = std::int64_t(c.d.rank());
  const SparsePoly& gr = c.d.coefficient(unsigned(r));
  const bool monomial = gr.terms().size() == 1;
  for (unsigned deg = 1; deg <= 3; ++deg) {
    if (!monomial && deg > 1) break;
    const auto ps = primes_of_degree(fq, deg);
    // A few primes from each end of the enumeration.
    std::vector<SparsePoly> pick;
    for (std::size_t i = 0; i < ps.size() && i < 3; ++i) pick.push_back(ps[i]);
    if (ps.size() > 3) pick.push_back(ps.back());
    for (const auto& ell : pick) {
      // lead(phi_a) = lead(a) g_r^{N}, N = sum_{i<deg a} q^{r i}
      std::int64_t n = 0;
      for (unsigned i = 0; i < deg; ++i) n += ipow(q, r * i);
      const auto& g = gr.terms().front();
      const SparsePoly want = SparsePoly::monomial(ell.leading_coeff() * g.coeff.pow(std::uint64_t(n)), g.exp * n);
      const SkewA f = phi_of(c.d, ell);
      const SparsePoly got = f.leading();
      c.check(got == want && f.degree() == r * std::int64_t(deg), {{"l", ell.to_string()}}, want.to_string(),
              got.to_string() + " at tau^" + std::to_string(f.degree()));
    }
  }
}

void suite_charpoly(Ctx& c) {
  const FieldPtr& fq = c.d.base();
  const unsigned r = c.d.rank();
  const SparsePoly t = SparsePoly::T(fq);
  if (c.d.is_default_family()) {
    // P_{T-c} = x^r + x^{r-1} - (T - c)
    for (std::uint64_t idx = 1; idx < fq->order().value(); ++idx) {
      const SparsePoly prime = t - SparsePoly::constant(fq->from_index(idx));
      const CharPoly cp = charpoly_linear_system(c.d, prime);
      std::vector<SparsePoly> want(r + 1, SparsePoly(fq));
      want[0] = want[1] = SparsePoly::from_int(fq, 1);
      want[r] = -prime;
      CharPoly w = cp;
      w.a = want;
      c.check(cp.a == want, {{"prime", prime.to_string()}}, w.to_string(), cp.to_string());
    }
  }
  for (const auto& prime : primes_up_to(fq, default_prime_degree(c.d.q()))) {
    const ReducedModule red = reduce_mod(c.d, prime);
    if (red.type != ReductionType::Good) continue;
    const CharPoly cp = charpoly_linear_system(c.d, red);
    const std::int64_t d = prime.degree();
    Json in{{"prime", prime.to_string()}};
    for (unsigned i = 1; i <= r; ++i) {
      const std::int64_t b = std::int64_t(i) * d / std::int64_t(r);
      c.check(cp.a[i].degree() <= b, {{"prime", prime.to_string()}, {"i", i}},
              "deg a_" + std::to_string(i) + " <= " + std::to_string(b), std::to_string(cp.a[i].degree()));
    }
    const SparsePoly ar = prime * epsilon_of(red);
    c.check(cp.a[r] == ar, in, "a_r = " + ar.to_string(), cp.a[r].to_string());
    c.check(residual(red, cp).is_zero(), in, "0", residual(red, cp).to_string());
  }
}

std::vector<SparsePoly> linear_ells(const FieldPtr& fq, const SparsePoly& exclude) {
  const SparsePoly t = SparsePoly::T(fq);
  std::vector<SparsePoly> out;
  for (int k = 1; k <= 3; ++k) {
    SparsePoly ell = t - SparsePoly::from_int(fq, k);
    if (ell == t || ell == exclude || std::find(out.begin(), out.end(), ell) != out.end()) continue;
    out.push_back(ell);
  }
  return out;
}

void suite_agreement(Ctx& c) {
  const FieldPtr& fq = c.d.base();
  for (const auto& prime : primes_up_to(fq, 2)) {
    const ReducedModule red = reduce_mod(c.d, prime);
    if (red.type != ReductionType::Good) continue;
    const CharPoly cp = charpoly_linear_system(c.d, red);
    for (const auto& ell : linear_ells(fq, prime)) {
      ResidueField fl(ell);
      const FieldPoly lin = reduce_charpoly(cp, fl);
      const FieldPoly tor = torsion_space(red, ell).charpoly;
      c.check(lin == tor, {{"prime", prime.to_string()}, {"l", ell.to_string()}, {"oracle", "torsion"}},
              poly_over_fl(tor, fl), poly_over_fl(lin, fl));
    }
  }
}

void suite_det(Ctx& c) {
  const FieldPtr& fq = c.d.base();
  const SparsePoly ell = SparsePoly::T(fq) - SparsePoly::from_int(fq, 1);
  for (const auto& prime : primes_up_to(fq, default_prime_degree(c.d.q()))) {
    if (prime == ell) continue;
    const ReducedModule red = reduce_mod(c.d, prime);
    if (red.type != ReductionType::Good) continue;
    const CharPoly cp = charpoly_linear_system(c.d, red);
    const DetCheck dc = det_check(red, cp, ell, FrobeniusSource::Motive);
    ResidueField fl(ell);
    c.check(dc.ok, {{"prime", prime.to_string()}, {"l", ell.to_string()}}, fl.format(dc.prime_residue),
            fl.format(dc.signed_constant) + " / det " + fl.format(dc.frobenius_det));
  }
}

void suite_reduction(Ctx& c) {
  const FieldPtr& fq = c.d.base();
  const unsigned r = c.d.rank();
  const SparsePoly t = SparsePoly::T(fq);
  if (c.d.is_default_family()) {
    const ReducedModule red = reduce_mod(c.d, t);
    const SkewF want = SkewF::tau(red.field(), r - 1);
    c.check(red.type == ReductionType::StableBad && red.reduced_rank == r - 1 && red.phi_T == want, {{"prime", "T"}},
            "stable-bad rank " + std::to_string(r - 1) + ", phi_T = " + want.to_string(),
            red.type_string() + ", phi_T = " + red.phi_T.to_string());
  }
  for (const auto& prime : primes_up_to(fq, 1)) {
    const ReducedModule red = reduce_mod(c.d, prime);
    if (red.type != ReductionType::Good) continue;
    const HeightResult h = height(red);
    Json in{{"prime", prime.to_string()}};
    if (c.d.is_default_family()) c.check(h.h == r - 1, in, "height " + std::to_string(r - 1), std::to_string(h.h));
    c.check(h.consistent, in, "m_p divisible by deg p, m_p2 = 2 m_p",
            std::to_string(h.m_p) + ", " + std::to_string(h.m_p2));
    for (unsigned ep = 1; ep <= 2; ++ep) {
      const std::int64_t want = (std::int64_t(r) - h.h) * ep * prime.degree();
      const std::int64_t got = torsion_at_char(red, ep);
      c.check(got == want, {{"prime", prime.to_string()}, {"e_prime", ep}}, std::to_string(want), std::to_string(got));
    }
  }
}

void suite_newton(Ctx& c) {
  const FieldPtr& fq = c.d.base();
  const auto q = std::int64_t(c.d.q());
  const auto r = std::int64_t(c.d.rank());
  const SparsePoly t = SparsePoly::T(fq);
  const Place inf = Place::infinity(), at_t = Place::finite(t);
  const SparsePoly tc = t - SparsePoly::from_int(fq, 1);
  auto slopes_str = [](const NewtonPolygon& np) {
    std::string s;
    for (const auto& seg : np.segments) s += rational_string(seg.slope) + "x" + std::to_string(seg.length) + " ";
    return s;
  };
  if (c.d.is_default_family()) {
    const Rational s0(2 - q, ipow(q, r) - 1);
    const auto np = newton_polygon(as_xpoly(c.d.phi_T()), inf);
    c.check(np.segments.size() == 1 && np.segments[0].slope == s0 && np.vertices.front().first == 1,
            {{"a", "T"}, {"place", "inf"}}, rational_string(s0), slopes_str(np));
    // Nonzero torsion of phi_T has valuation (q-2)/(q^r-1); lattice values sit one lower.
    const Rational mu = np.root_valuations().front().first;
    const Rational lambda = mu - 1;
    const Rational lambda_want(-ipow(q, r) + q - 1, ipow(q, r) - 1);
    c.check(mu == Rational(q - 2, ipow(q, r) - 1) && lambda == lambda_want, {{"a", "T"}, {"quantity", "v(lambda)"}},
            rational_string(lambda_want), rational_string(lambda));

    const auto tor = torsion_slopes(c.d, tc, at_t);
    const bool ok = tor.segments.size() == 2 && tor.segments[0].slope == Rational(0) &&
                    tor.segments[0].length == ipow(q, r - 1) - 1 &&
                    tor.segments[1].slope == Rational(1, ipow(q, r - 1)) &&
                    tor.segments[1].length == ipow(q, r) - ipow(q, r - 1);
    c.check(ok, {{"a", tc.to_string()}, {"place", "T"}},
            "0x" + std::to_string(ipow(q, r - 1) - 1) + " 1/" + std::to_string(ipow(q, r - 1)) + "x" +
                std::to_string(ipow(q, r) - ipow(q, r - 1)),
            slopes_str(tor));

    const auto t2 = torsion_slopes(c.d, t * t, at_t);
    bool has_a = false, has_b = false;
    for (const auto& s : t2.segments) {
      has_a = has_a || s.slope == Rational(1, ipow(q, 2 * r - 2));
      has_b = has_b || s.slope == Rational(1, ipow(q, r - 1));
    }
    c.check(has_a && has_b, {{"a", "T^2"}, {"place", "T"}},
            "contains 1/" + std::to_string(ipow(q, 2 * r - 2)) + " and 1/" + std::to_string(ipow(q, r - 1)),
            slopes_str(t2));

    for (unsigned deg = 1; deg <= 2; ++deg) {
      const SparsePoly ell = primes_of_degree(fq, deg).back();
      const auto ip = inertia_order_prediction(c.d, ell);
      c.check(ip.matches, {{"l", ell.to_string()}}, std::to_string(ip.expected), std::to_string(ip.denominator));
    }
    // Ramification at infinity is tame: denominators divide q^r - 1.
    for (const auto& a : {t, t * t, tc}) {
      const auto np_a = torsion_slopes(c.d, a, inf);
      bool tame = true;
      for (const auto& s : np_a.segments) tame = tame && (ipow(q, r) - 1) % s.slope.denominator() == 0;
      c.check(tame, {{"a", a.to_string()}, {"place", "inf"}}, "denominators divide " + std::to_string(ipow(q, r) - 1),
              slopes_str(np_a));
    }
    // Slope-0 roots at (T) reduce to the q^{r-1}-1 distinct roots of x^{q^{r-1}-1} = c.
    const auto seg0 = tor.segments.front();
    const FieldPoly red_poly = FieldPoly::monomial(fq->one(), std::size_t(ipow(q, r - 1) - 1)) -
                               FieldPoly::constant(fq->embed_base(fq->one()));
    std::vector<FieldElem> dc;
    for (int i = 1; i <= red_poly.degree(); ++i) dc.push_back(red_poly.coeff(std::size_t(i)) * fq->from_int(i));
    const FieldPoly deriv(fq, dc);
    const bool separable = gcd(red_poly, deriv).degree() == 0;
    c.check(separable && seg0.length == red_poly.degree(), {{"a", tc.to_string()}, {"place", "T"}, {"quantity", "slope-0 roots"}},
            std::to_string(red_poly.degree()), std::to_string(seg0.length));
  }
  // Single-slope torsion polygon away from stable reduction: psi_T = T - T tau.
  {
    const DrinfeldModule psi(fq, {t, -t});
    const auto f = divide_by_x(as_xpoly(phi_of(psi, tc)));
    const auto np = newton_polygon(f, at_t);
    c.check(np.segments.size() == 1 && np.segments[0].slope == Rational(1, q - 1) && !slope_integrality(f, at_t),
            {{"module", "T - T tau"}, {"a", tc.to_string()}, {"place", "T"}}, "1/" + std::to_string(q - 1),
            slopes_str(np));
  }
  {
    const DrinfeldModule carlitz = DrinfeldModule::carlitz(fq);
    const auto ip = inertia_order_prediction(carlitz, tc);
    c.check(ip.denominator == 1 && ip.matches, {{"module", "carlitz"}, {"l", tc.to_string()}}, "1",
            std::to_string(ip.denominator));
  }
  // Hull invariants on seeded random sparse inputs.
  std::mt19937_64 rng(c.cfg.seed);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<XTerm> terms;
    const int n = 1 + int(rng() % 8);
    for (int i = 0; i < n; ++i) {
      const std::int64_t ex = std::int64_t(rng() % 40);
      const std::int64_t v = std::int64_t(rng() % 9);
      SparsePoly num = mono(fq, v);
      if (rng() % 2) num = num + mono(fq, v + 1 + std::int64_t(rng() % 3));
      terms.push_back({ex, rng() % 3 ? RationalFn(num) : RationalFn(SparsePoly::from_int(fq, 1), num)});
    }
    const XPoly f = make_xpoly(std::move(terms));
    if (f.empty()) continue;
    const Place pl = rng() % 2 ? inf : at_t;
    const auto np = newton_polygon(f, pl);
    bool ok = true;
    std::int64_t len = 0;
    for (std::size_t i = 0; i < np.segments.size(); ++i) {
      len += np.segments[i].length;
      if (i && !(np.segments[i - 1].slope < np.segments[i].slope)) ok = false;
    }
    ok = ok && len == f.back().exp - f.front().exp;
    for (const auto& [x, y] : np.points) {
      // Point lies on or above the segment covering x.
      for (std::size_t i = 1; i < np.vertices.size(); ++i) {
        const auto& a = np.vertices[i - 1];
        const auto& b = np.vertices[i];
        if (x < a.first || x > b.first) continue;
        if (Rational(y - a.second) < Rational(b.second - a.second, b.first - a.first) * (x - a.first)) ok = false;
      }
    }
    c.check(ok, {{"seed", c.cfg.seed}, {"trial", trial}, {"place", pl.to_string()}}, "convex lower hull",
            slopes_str(np));
  }
}

void suite_irreducibility(Ctx& c) {
  const FieldPtr& fq = c.d.base();
  const auto q = std::int64_t(c.d.q());
  const auto r = std::int64_t(c.d.rank());
  const SparsePoly t = SparsePoly::T(fq);
  const Place inf = Place::infinity();
  if (c.d.is_default_family()) {
    const bool coprime = std::gcd(q - 2, ipow(q, r) - 1) == 1;
    for (std::uint64_t idx = 1; idx < fq->order().value(); ++idx) {
      const SparsePoly tc = t - SparsePoly::constant(fq->from_index(idx));
      const auto f = divide_by_x(as_xpoly(phi_of(c.d, tc)));
      const auto got = np_irreducibility(f, inf);
      const auto want = coprime ? Irreducibility::Irreducible : Irreducibility::Inconclusive;
      c.check(got == want, {{"a", tc.to_string()}, {"place", "inf"}}, to_string(want), to_string(got));
      const auto local = np_irreducibility(f, Place::finite(tc));
      c.check(local == Irreducibility::Inconclusive, {{"a", tc.to_string()}, {"place", tc.to_string()}},
              "inconclusive", to_string(local));
    }
  }
  const XPoly eis = make_xpoly({{0, RationalFn(-t)}, {2, RationalFn(SparsePoly::from_int(fq, 1))}});
  c.check(np_irreducibility(eis, inf) == Irreducibility::Irreducible, {{"f", "x^2 - T"}, {"place", "inf"}},
          "irreducible", to_string(np_irreducibility(eis, inf)));
}

void suite_isogeny(Ctx& c) {
  const FieldPtr& fq = c.d.base();
  // First (prime, ell) pair whose Frobenius has an eigenvalue in F_ell.
  for (const auto& prime : primes_up_to(fq, 2)) {
    const ReducedModule red = reduce_mod(c.d, prime);
    if (red.type != ReductionType::Good) continue;
    for (const auto& ell : linear_ells(fq, prime)) {
      const TorsionSpace ts = torsion_space(red, ell);
      const auto eig = roots(ts.charpoly);
      if (eig.empty()) continue;
      MatrixFq shifted = ts.frobenius_matrix - MatrixFq::identity(ts.fl->field(), c.d.rank()).scaled(eig.front());
      const auto v = shifted.kernel_basis().front();
      const FieldElem x = torsion_element(red, ts, v);
      const auto line = fl_span_basis(red, ts, {x});
      const std::vector<std::vector<FieldElem>> subspaces{{}, ts.basis, line};
      const char* names[] = {"zero", "all torsion", "Frobenius-stable line"};
      for (std::size_t k = 0; k < subspaces.size(); ++k) {
        const auto& X = subspaces[k];
        const Isogeny iso = quotient_by_kernel(red, ts, X);
        Json in{{"prime", prime.to_string()}, {"l", ell.to_string()}, {"kernel", names[k]}, {"dim_Fq", X.size()}};
        const SkewF lhs = iso.u * iso.source_T, rhs = iso.target_T * iso.u;
        c.check(lhs == rhs, in, lhs.to_string(), rhs.to_string());
        const SkewF ue = map_coefficients(iso.u, ts.emb);
        bool vanishes = true;
        for (const auto& w : X) vanishes = vanishes && linearized_eval(ue, w).is_zero();
        const std::size_t kd = kernel_dimension(ue, ts.ext);
        const std::size_t want = X.size() * fq->degree();
        c.check(vanishes && kd == want && iso.u.degree() == std::int64_t(X.size()), in,
                "kernel F_p-dim " + std::to_string(want), "kernel F_p-dim " + std::to_string(kd));
      }
      return;
    }
  }
  c.check(false, {{"search", "primes of degree <= 2"}}, "a Frobenius-stable line", "none found");
}

void suite_chebotarev(Ctx& c) {
  const FieldPtr& fq = c.d.base();
  const unsigned r = c.d.rank();
  const SparsePoly t = SparsePoly::T(fq);
  const SparsePoly ell = t - SparsePoly::from_int(fq, 1);
  const std::size_t min_samples = 10'000;

  // Oracle backends agree at F_3.
  {
    const FieldPtr f3 = FiniteField::make(3, 1, 1);
    const unsigned rr = ipow(3, std::int64_t(r) * r) <= std::int64_t(c.cfg.budget) ? r : 3;
    const auto a = gl_charpoly_distribution(rr, f3, GLBackend::Enumerate, c.cfg.budget, c.cfg.threads);
    const auto b = gl_charpoly_distribution(rr, f3, GLBackend::Formula);
    c.check(a.counts == b.counts && a.total == gl_order(rr, 3), {{"field", "F_3"}, {"r", rr}},
            "enumeration = formula", std::to_string(a.counts.size()) + " vs " + std::to_string(b.counts.size()) + " cells");
  }

  unsigned max_deg = 0;
  if (c.cfg.max_deg) {
    max_deg = *c.cfg.max_deg;
  } else {
    // Smallest depth reaching the sample size the TV threshold is calibrated for.
    std::size_t n = 0;
    while (n < min_samples && max_deg < 12) n += primes_of_degree(fq, ++max_deg).size();
  }
  SampleOptions opt;
  opt.threads = c.cfg.threads;
  opt.budget = c.cfg.budget;
  const SampleReport rep = sample_frobenii(c.d, ell, max_deg, opt);
  const SurjectivityVerdict v = surjectivity_evidence(rep);
  Json base{{"l", ell.to_string()}, {"max_deg", max_deg}};
  for (const auto& s : rep.samples) {
    c.check(s.det_ok, {{"l", ell.to_string()}, {"prime", s.prime.to_string()}}, "det = p mod l", "mismatch");
  }
  if (c.d.is_default_family()) {
    // Linear primes follow the closed form x^r + x^{r-1} - (T - c).
    for (const auto& s : rep.samples) {
      if (s.prime.degree() != 1) continue;
      std::vector<FieldElem> w(r + 1, rep.fl->field()->zero());
      w[r] = w[r - 1] = rep.fl->field()->one();
      w[0] = -rep.fl->reduce(s.prime);
      const FieldPoly want(rep.fl->field(), w);
      c.check(s.charpoly == want, {{"l", ell.to_string()}, {"prime", s.prime.to_string()}}, poly_over_fl(want, *rep.fl),
              poly_over_fl(s.charpoly, *rep.fl));
    }
  }
  if (rep.samples.size() >= min_samples) {
    Json in = base;
    in["samples"] = rep.samples.size();
    std::string why;
    for (const auto& reason : v.reasons) why += reason + "; ";
    c.check(v.consistent, in, "consistent (tv < " + std::to_string(rep.tv_threshold) + ")",
            v.to_string() + " tv=" + std::to_string(rep.tv_distance) + " " + why);
  }
}

using SuiteFn = void (*)(Ctx&);
const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"phi", suite_phi},
      {"leading", suite_leading},
      {"charpoly", suite_charpoly},
      {"agreement", suite_agreement},
      {"det", suite_det},
      {"reduction", suite_reduction},
      {"newton", suite_newton},
      {"irreducibility", suite_irreducibility},
      {"isogeny", suite_isogeny},
      {"chebotarev", suite_chebotarev},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : registry()) out.push_back(n);
    return out;
  }();
  return names;
}

std::vector<VerifyOutcome> run_suites(const Config& cfg, const std::string& suite) {
  const auto& reg = registry();
  if (suite != "all" && std::none_of(reg.begin(), reg.end(), [&](const auto& s) { return s.first == suite; })) {
    throw UsageError("unknown suite '" + suite + "'");
  }
  const DrinfeldModule d = cfg.module();
  std::vector<VerifyOutcome> out;
  for (const auto& [name, fn] : reg) {
    if (suite != "all" && name != suite) continue;
    Ctx ctx{cfg, d, 0, std::nullopt};
    VerifyOutcome o;
    o.suite = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(ctx);
    } catch (const std::exception& ex) {
      ctx.check(false, {{"suite", name}}, "no exception", ex.what());
    }
    o.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.checks = ctx.checks;
    o.pass = !ctx.failure;
    if (ctx.failure) o.counterexample = ctx.failure->dump();
    out.push_back(std::move(o));
  }
  return out;
}

std::string verify_json(const Config& cfg, const std::vector<VerifyOutcome>& outcomes) {
  Json j;
  Json params = params_json(cfg);
  params["seed"] = cfg.seed;
  if (cfg.max_deg) params["max_deg"] = *cfg.max_deg;
  j["params"] = params;
  j["warnings"] = cfg.warnings();
  Json suites = Json::array();
  bool all = true;
  for (const auto& o : outcomes) {
    Json s{{"name", o.suite}, {"pass", o.pass}, {"checks", o.checks}};
    s["counterexample"] = o.pass ? Json(nullptr) : Json::parse(o.counterexample);
    suites.push_back(s);
    all = all && o.pass;
  }
  j["suites"] = suites;
  j["pass"] = all;
  return j.dump(2);
}

// ---------------------------------------------------------------- reports

std::string phi_json(const Config& cfg, const SparsePoly& a) {
  const DrinfeldModule d = cfg.module();
  const SkewA f = phi_of(d, a);
  Json j;
  j["params"] = params_json(cfg);
  j["a"] = a.to_string();
  j["phi"] = f.to_string();
  j["terms"] = skew_terms_json(f);
  return j.dump(2);
}

std::string charpoly_json(const Config& cfg, const SparsePoly& prime, const std::optional<SparsePoly>& ell,
                          DegreeBounds bounds) {
  const DrinfeldModule d = cfg.module();
  if (!prime.is_monic() || !is_irreducible(prime)) throw UsageError("--p must be a monic prime of A: " + prime.to_string());
  const ReducedModule red = reduce_mod(d, prime);
  CharPolyOptions opt;
  opt.bounds = bounds;
  const CharPoly cp = charpoly_linear_system(d, red, opt);
  Json j;
  j["params"] = params_json(cfg);
  j["prime"] = prime.to_string();
  j["degree"] = prime.degree();
  j["reduction"] = red.type_string();
  j["bounds"] = bounds == DegreeBounds::Sharp ? "sharp" : "relaxed";
  j["charpoly"] = cp.to_string();
  Json a = Json::array();
  for (const auto& c : cp.a) a.push_back(c.to_string());
  j["coefficients"] = a;
  j["epsilon"] = cp.epsilon.to_string();
  j["resolution"] = cp.resolution;
  j["initial_nullity"] = cp.initial_nullity;
  j["residual_zero"] = residual(red, cp).is_zero();
  if (ell) {
    ResidueField fl(*ell);
    const FieldPoly rc = reduce_charpoly(cp, fl);
    const DetCheck dc = det_check(red, cp, *ell);
    Json m;
    m["l"] = ell->to_string();
    m["charpoly"] = poly_over_fl(rc, fl);
    m["coefficients"] = monic_coeffs_json(rc, fl);
    m["det_check"] = {{"ok", dc.ok},
                      {"signed_constant", fl.format(dc.signed_constant)},
                      {"prime_residue", fl.format(dc.prime_residue)},
                      {"frobenius_det", fl.format(dc.frobenius_det)}};
    j["mod_l"] = m;
  }
  return j.dump(2);
}

std::string torsion_json(const Config& cfg, const SparsePoly& prime, const SparsePoly& ell) {
  const DrinfeldModule d = cfg.module();
  const ReducedModule red = reduce_mod(d, prime);
  if (red.type != ReductionType::Good) throw UsageError("bad reduction at " + prime.to_string());
  TorsionOptions topt;
  topt.max_field_degree = unsigned(std::min<std::uint64_t>(cfg.budget, 1U << 20));
  const TorsionSpace ts = torsion_space(red, ell, topt);
  const ResidueField& fl = *ts.fl;
  Json j;
  j["params"] = params_json(cfg);
  j["prime"] = prime.to_string();
  j["l"] = ell.to_string();
  j["splitting_degree"] = ts.splitting_degree;
  j["field_degree"] = ts.ext->degree();
  Json mat = Json::array();
  for (std::size_t i = 0; i < ts.frobenius_matrix.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < ts.frobenius_matrix.cols(); ++k) row.push_back(fl.format(ts.frobenius_matrix.at(i, k)));
    mat.push_back(row);
  }
  j["frobenius_matrix"] = mat;
  j["charpoly"] = poly_over_fl(ts.charpoly, fl);
  j["coefficients"] = monic_coeffs_json(ts.charpoly, fl);
  const CharPoly cp = charpoly_linear_system(d, red);
  j["matches_linear_system"] = reduce_charpoly(cp, fl) == ts.charpoly;
  return j.dump(2);
}

std::string newton_json(const Config& cfg, const SparsePoly& a, const Place& place) {
  const DrinfeldModule d = cfg.module();
  const XPoly f = divide_by_x(as_xpoly(phi_of(d, a)));
  Json j;
  j["params"] = params_json(cfg);
  j["a"] = a.to_string();
  j["polynomial"] = "phi_a(x)/x";
  j["polygon"] = polygon_json(newton_polygon(f, place));
  j["first_slope_integral"] = slope_integrality(f, place);
  j["irreducibility"] = to_string(np_irreducibility(f, place));
  return j.dump(2);
}

std::string inertia_json(const Config& cfg, const SparsePoly& ell) {
  const DrinfeldModule d = cfg.module();
  const auto ip = inertia_order_prediction(d, ell);
  Json j;
  j["params"] = params_json(cfg);
  j["l"] = ell.to_string();
  j["denominator"] = ip.denominator;
  j["expected"] = ip.expected;
  j["matches"] = ip.matches;
  return j.dump(2);
}

std::string sample_json(const Config& cfg, const SampleReport& rep, const SurjectivityVerdict& v) {
  Json j;
  j["params"] = {{"p", rep.p}, {"e", rep.e}, {"q", rep.q}, {"r", rep.r}, {"l", rep.ell.to_string()},
                 {"max_deg", rep.max_deg}};
  if (cfg.coefficients) j["params"]["coefficients"] = *cfg.coefficients;
  Json samples = Json::array();
  for (const auto& s : rep.samples) {
    samples.push_back({{"prime", s.prime.to_string()},
                       {"deg", s.prime.degree()},
                       {"charpoly", monic_coeffs_json(s.charpoly, *rep.fl)},
                       {"det_ok", s.det_ok}});
  }
  j["samples"] = samples;
  j["sample_count"] = rep.samples.size();
  j["bad_primes_skipped"] = rep.bad_primes_skipped;
  j["oracle_backend"] = to_string(rep.oracle.backend);
  j["tv_distance"] = rep.tv_distance;
  j["tv_threshold"] = rep.tv_threshold;
  j["flags"] = {{"irreducible_seen", rep.irreducible_seen}, {"det_covers", rep.det_covers}};
  j["verdict"] = v.to_string();
  j["reasons"] = v.reasons;
  j["evidence_only"] = v.evidence_only;
  j["warnings"] = rep.warnings;
  j["note"] = v.note;
  return j.dump(2);
}

std::string oracle_gl_json(const Config& cfg, const GLDistribution& g, const ResidueField& fl) {
  Json j;
  j["params"] = params_json(cfg);
  j["r"] = g.r;
  j["l"] = fl.prime().to_string();
  j["field_order"] = g.field->order().value();
  j["backend"] = to_string(g.backend);
  j["total"] = g.total.str();
  Json counts = Json::array();
  for (const auto& [k, n] : g.counts) {
    Json coeffs = Json::array();
    for (auto idx : k) coeffs.push_back(fl.format(g.field->from_index(idx)));
    counts.push_back({{"charpoly", coeffs}, {"count", n.str()}});
  }
  j["counts"] = counts;
  return j.dump(2);
}

}  // namespace drinfeld
