#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "drinfeld/newton_valuation.hpp"

using namespace drinfeld;

namespace {

struct Fixture {
  FieldPtr f5 = FiniteField::make(5, 1, 1);
  DrinfeldModule d = DrinfeldModule::default_family(f5, 3);
  SparsePoly T = SparsePoly::T(f5);
  Place inf = Place::infinity();
  Place at_t = Place::finite(SparsePoly::T(f5));
};

std::vector<std::pair<Rational, std::int64_t>> segs(const NewtonPolygon& np) {
  std::vector<std::pair<Rational, std::int64_t>> out;
  for (const auto& s : np.segments) out.emplace_back(s.slope, s.length);
  return out;
}

}  // namespace

TEST_CASE_FIXTURE(Fixture, "phi_T at infinity") {
  const auto np = newton_polygon(as_xpoly(d.phi_T()), inf);
  CHECK(segs(np) == std::vector<std::pair<Rational, std::int64_t>>{{Rational(-3, 124), 124}});
  CHECK(np.vertices.front() == std::pair<std::int64_t, std::int64_t>{1, -1});
  CHECK(np.vertices.back() == std::pair<std::int64_t, std::int64_t>{125, -4});
  CHECK(np.root_valuations().front().first == Rational(3, 124));
}

TEST_CASE_FIXTURE(Fixture, "torsion polygons at (T)") {
  const auto lin = torsion_slopes(d, T - SparsePoly::from_int(f5, 2), at_t);
  CHECK(segs(lin) == std::vector<std::pair<Rational, std::int64_t>>{{Rational(0), 24}, {Rational(1, 25), 100}});
  const auto quad = torsion_slopes(d, SparsePoly::parse(f5, "T^2+2"), at_t);
  CHECK(quad.max_slope_denominator() == 625);
  const auto sq = torsion_slopes(d, T * T, at_t);
  bool a = false, b = false;
  for (const auto& s : sq.segments) {
    a = a || s.slope == Rational(1, 625);
    b = b || s.slope == Rational(1, 25);
  }
  CHECK(a);
  CHECK(b);
}

TEST_CASE_FIXTURE(Fixture, "inertia predictions") {
  CHECK(inertia_order_prediction(d, SparsePoly::parse(f5, "T+1")).denominator == 25);
  const auto q = inertia_order_prediction(d, SparsePoly::parse(f5, "T^2+2"));
  CHECK(q.denominator == 625);
  CHECK(q.matches);
  CHECK(inertia_order_prediction(DrinfeldModule::carlitz(f5), SparsePoly::parse(f5, "T+1")).denominator == 1);
  CHECK_THROWS(inertia_order_prediction(d, T));
}

TEST_CASE_FIXTURE(Fixture, "irreducibility certificates") {
  const auto f = divide_by_x(as_xpoly(phi_of(d, T - SparsePoly::from_int(f5, 3))));
  CHECK(np_irreducibility(f, inf) == Irreducibility::Irreducible);
  CHECK(np_irreducibility(f, Place::finite(T - SparsePoly::from_int(f5, 3))) == Irreducibility::Inconclusive);
  const XPoly eis = make_xpoly({{0, RationalFn(-T)}, {2, RationalFn(SparsePoly::from_int(f5, 1))}});
  CHECK(np_irreducibility(eis, inf) == Irreducibility::Irreducible);
  CHECK(slope_integrality(f, at_t));
}

TEST_CASE_FIXTURE(Fixture, "single slope 1/(q-1) without stable reduction") {
  const DrinfeldModule psi(f5, {T, -T});
  const auto f = divide_by_x(as_xpoly(phi_of(psi, T - SparsePoly::from_int(f5, 1))));
  CHECK(segs(newton_polygon(f, at_t)) == std::vector<std::pair<Rational, std::int64_t>>{{Rational(1, 4), 4}});
  CHECK_FALSE(slope_integrality(f, at_t));
}

TEST_CASE_FIXTURE(Fixture, "degenerate inputs") {
  const XPoly x = make_xpoly({{1, RationalFn(SparsePoly::from_int(f5, 1))}});
  CHECK(newton_polygon(x, inf).segments.empty());
  CHECK(slope_integrality(x, inf));
  CHECK_THROWS(newton_polygon(XPoly{}, inf));
}

TEST_CASE_FIXTURE(Fixture, "lower hull invariants on random inputs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<XTerm> t;
    for (int i = 0; i < 1 + int(rng() % 10); ++i) {
      t.push_back({std::int64_t(rng() % 60), RationalFn(SparsePoly::monomial(f5->one(), std::int64_t(rng() % 12)))});
    }
    const XPoly f = make_xpoly(t);
    const auto np = newton_polygon(f, trial % 2 ? inf : at_t);
    std::int64_t len = 0;
    for (std::size_t i = 0; i < np.segments.size(); ++i) {
      len += np.segments[i].length;
      if (i) CHECK(np.segments[i - 1].slope < np.segments[i].slope);
    }
    CHECK(len == f.back().exp - f.front().exp);
    // Brute force: no point lies below any hull edge line within its range.
    for (const auto& [px, py] : np.points) {
      for (std::size_t i = 1; i < np.vertices.size(); ++i) {
        const auto& a = np.vertices[i - 1];
        const auto& b = np.vertices[i];
        if (px < a.first || px > b.first) continue;
        CHECK((py - a.second) * (b.first - a.first) >= (b.second - a.second) * (px - a.first));
      }
    }
  }
}
