#include "drinfeld/newton_valuation.hpp"

#include <algorithm>
#include <stdexcept>

namespace drinfeld {

namespace {

std::int64_t checked_pow(std::int64_t b, std::int64_t k) {
  std::int64_t out = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(out, b, &out)) throw std::overflow_error("x-exponent overflows int64");
  }
  return out;
}

using Pt = std::pair<std::int64_t, std::int64_t>;
__extension__ using Wide = __int128;

// Cross product sign of (b - a) x (c - a); >= 0 means b is not strictly below ac.
Wide cross(const Pt& a, const Pt& b, const Pt& c) {
  return Wide(b.first - a.first) * (c.second - a.second) - Wide(b.second - a.second) * (c.first - a.first);
}

}  // namespace

XPoly make_xpoly(std::vector<XTerm> terms) {
  std::sort(terms.begin(), terms.end(), [](const XTerm& a, const XTerm& b) { return a.exp < b.exp; });
  XPoly out;
  for (auto& t : terms) {
    if (t.exp < 0) throw std::invalid_argument("negative x-exponent");
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff = out.back().coeff + t.coeff;
      if (out.back().coeff.is_zero()) out.pop_back();
    } else if (!t.coeff.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

XPoly as_xpoly(const SkewA& f) {
  const auto order = f.ring()->order();
  if (!order || *order > std::uint64_t(INT64_MAX)) throw std::overflow_error("q does not fit in int64");
  XPoly out;
  for (const auto& t : f.terms()) out.push_back({checked_pow(std::int64_t(*order), t.exp), RationalFn(t.coeff)});
  return out;
}

XPoly divide_by_x(const XPoly& f) {
  XPoly out;
  for (const auto& t : f) {
    if (t.exp == 0) throw std::invalid_argument("divide_by_x needs a zero constant term");
    out.push_back({t.exp - 1, t.coeff});
  }
  return out;
}

std::vector<std::pair<Rational, std::int64_t>> NewtonPolygon::root_valuations() const {
  std::vector<std::pair<Rational, std::int64_t>> out;
  for (const auto& s : segments) out.emplace_back(-s.slope, s.length);
  return out;
}

std::int64_t NewtonPolygon::max_slope_denominator() const {
  std::int64_t m = 1;
  for (const auto& s : segments) m = std::max(m, s.slope.denominator());
  return m;
}

NewtonPolygon newton_polygon(const XPoly& f, const Place& v) {
  if (f.empty()) throw std::invalid_argument("Newton polygon of the zero polynomial");
  NewtonPolygon np;
  np.place = v;
  for (const auto& t : f) np.points.emplace_back(t.exp, *valuation(t.coeff, v));
  std::sort(np.points.begin(), np.points.end());
  // Monotone chain; collinear points are dropped so segments are maximal.
  for (const auto& pt : np.points) {
    while (np.vertices.size() >= 2 && cross(np.vertices[np.vertices.size() - 2], np.vertices.back(), pt) <= 0) {
      np.vertices.pop_back();
    }
    np.vertices.push_back(pt);
  }
  for (std::size_t i = 1; i < np.vertices.size(); ++i) {
    const auto& a = np.vertices[i - 1];
    const auto& b = np.vertices[i];
    np.segments.push_back({Rational(b.second - a.second, b.first - a.first), b.first - a.first});
  }
  return np;
}

NewtonPolygon torsion_slopes(const DrinfeldModule& d, const SparsePoly& a, const Place& v) {
  return newton_polygon(divide_by_x(as_xpoly(phi_of(d, a))), v);
}

InertiaPrediction inertia_order_prediction(const DrinfeldModule& d, const SparsePoly& ell) {
  const SparsePoly t = SparsePoly::T(d.base());
  if (ell.monic() == t) throw std::invalid_argument("inertia prediction needs ell != (T)");
  InertiaPrediction out;
  out.denominator = torsion_slopes(d, ell, Place::finite(t)).max_slope_denominator();
  out.expected = checked_pow(std::int64_t(d.q()), std::int64_t(d.rank() - 1) * ell.degree());
  out.matches = out.denominator == out.expected;
  return out;
}

const char* to_string(Irreducibility i) { return i == Irreducibility::Irreducible ? "irreducible" : "inconclusive"; }

Irreducibility np_irreducibility(const XPoly& f, const Place& v) {
  if (f.empty() || f.front().exp != 0) throw std::invalid_argument("np_irreducibility needs a nonzero constant term");
  const auto np = newton_polygon(f, v);
  if (np.segments.size() == 1 && np.segments[0].slope.denominator() == f.back().exp) return Irreducibility::Irreducible;
  return Irreducibility::Inconclusive;
}

bool slope_integrality(const XPoly& f, const Place& v) {
  const auto np = newton_polygon(f, v);
  return np.segments.empty() || np.segments.front().slope.denominator() == 1;
}

std::string rational_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

}  // namespace drinfeld
