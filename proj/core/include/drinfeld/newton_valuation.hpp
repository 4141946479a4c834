#pragma once

// Newton polygons of sparse x-polynomials over F_q(T) at a place, and the
// ramification data read off torsion polygons. Convention: a segment of
// slope s and length L accounts for L roots of valuation -s.

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "drinfeld/skew_algebra.hpp"

namespace drinfeld {

using Rational = boost::rational<std::int64_t>;

struct XTerm {
  std::int64_t exp;
  RationalFn coeff;
};
// Sparse polynomial in x, strictly increasing exponents, nonzero coefficients.
using XPoly = std::vector<XTerm>;

XPoly make_xpoly(std::vector<XTerm> terms);
// Linearized polynomial sum c_i x^{q^i}.
XPoly as_xpoly(const SkewA& f);
// f(x)/x; requires a zero constant term.
XPoly divide_by_x(const XPoly& f);

struct Segment {
  Rational slope;
  std::int64_t length = 0;
};

struct NewtonPolygon {
  Place place;
  std::vector<std::pair<std::int64_t, std::int64_t>> points;    // (exponent, valuation)
  std::vector<std::pair<std::int64_t, std::int64_t>> vertices;  // lower hull corners
  std::vector<Segment> segments;                                // increasing slopes

  // (valuation, multiplicity) of the nonzero roots, one entry per segment.
  std::vector<std::pair<Rational, std::int64_t>> root_valuations() const;
  std::int64_t max_slope_denominator() const;
};

// Throws std::invalid_argument on the zero polynomial.
NewtonPolygon newton_polygon(const XPoly& f, const Place& v);

// Polygon of phi_a(x)/x.
NewtonPolygon torsion_slopes(const DrinfeldModule& d, const SparsePoly& a, const Place& v);

struct InertiaPrediction {
  std::int64_t denominator = 0;  // largest slope denominator at (T)
  std::int64_t expected = 0;     // q^{(r-1) deg ell}
  bool matches = false;
};
// Requires ell != (T).
InertiaPrediction inertia_order_prediction(const DrinfeldModule& d, const SparsePoly& ell);

enum class Irreducibility { Irreducible, Inconclusive };
const char* to_string(Irreducibility i);

// Totally ramified criterion: one segment whose slope denominator equals the
// degree. Never reports reducibility. Requires a nonzero constant term.
Irreducibility np_irreducibility(const XPoly& f, const Place& v);

// Whether the first slope is an integer; true when there are no segments.
bool slope_integrality(const XPoly& f, const Place& v);

std::string rational_string(const Rational& x);

}  // namespace drinfeld
