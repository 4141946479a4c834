#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "drinfeld/function_ring.hpp"

using namespace drinfeld;

namespace {

SparsePoly random_poly(const FieldPtr& fq, std::mt19937& rng, int deg) {
  std::vector<SparsePoly::Term> t;
  for (int i = 0; i <= deg; ++i) t.push_back({i, fq->from_index(rng() % fq->order().value())});
  return SparsePoly(fq, t);
}

}  // namespace

TEST_CASE("parse and print") {
  const auto f5 = FiniteField::make(5, 1, 1);
  CHECK(SparsePoly::parse(f5, "T^3+2*T+1").to_string() == "T^3+2*T+1");
  CHECK(SparsePoly::parse(f5, "T-1") == SparsePoly::parse(f5, "T+4"));
  CHECK(SparsePoly::parse(f5, "(T+1)^2") == SparsePoly::parse(f5, "T^2+2T+1"));
  CHECK(SparsePoly::parse(f5, "  T ^ 2 - 3 ").to_string() == "T^2+2");
  CHECK(SparsePoly::parse(f5, "T^100000").degree() == 100000);
  const auto f9 = FiniteField::make(3, 2, 1);
  const SparsePoly g = SparsePoly::parse(f9, "(z+1)*T^2+z");
  CHECK(SparsePoly::parse(f9, g.to_string()) == g);
  for (const char* bad : {"T^^2", "T+*2", "(T+1", "T^x", "Q", ""}) {
    CHECK_THROWS_AS(SparsePoly::parse(f5, bad), ParseError);
  }
  try {
    SparsePoly::parse(f5, "T+@");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.token() == "@");
    CHECK(e.position() == 2);
  }
}

TEST_CASE("ring operations") {
  std::mt19937 rng(8);
  const auto f7 = FiniteField::make(7, 1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const SparsePoly a = random_poly(f7, rng, 6), b = random_poly(f7, rng, 3);
    if (b.is_zero()) continue;
    const auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    if (!a.is_zero()) CHECK(exact_div(a * b, b).value() == a);
    // Coefficients are Frobenius-fixed, so f^q is the exponent twist.
    CHECK(a.pow(7) == a.frobenius_twist(1));
  }
}

TEST_CASE("prime enumeration") {
  const auto f9 = FiniteField::make(3, 2, 1);
  CHECK(primes_of_degree(f9, 1).size() == 9);
  CHECK(primes_of_degree(f9, 2).size() == 36);
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto p3 = primes_of_degree(f5, 3);
  CHECK(p3.size() == 40);
  for (std::size_t i = 1; i < p3.size(); ++i) CHECK(p3[i - 1] < p3[i]);
  // Irreducible iff it has no factor among lower-degree primes.
  std::mt19937 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    SparsePoly f = random_poly(f5, rng, 4);
    if (f.degree() < 1) continue;
    f = f.monic();
    bool has_factor = false;
    for (unsigned d = 1; 2 * d <= unsigned(f.degree()); ++d) {
      for (const auto& p : primes_of_degree(f5, d)) has_factor = has_factor || divmod(f, p).second.is_zero();
    }
    CHECK(is_irreducible(f) == !has_factor);
  }
}

TEST_CASE("valuations") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto T = SparsePoly::T(f5);
  const Place inf = Place::infinity(), at_t = Place::finite(T);
  const Place at_t1 = Place::finite(SparsePoly::parse(f5, "T+1"));
  CHECK(*valuation(SparsePoly::parse(f5, "T^2+1"), inf) == -2);
  CHECK(*valuation(SparsePoly::parse(f5, "T^3+T^2"), at_t) == 2);
  CHECK(*valuation(SparsePoly::parse(f5, "(T+1)^3*(T+2)"), at_t1) == 3);
  CHECK_FALSE(valuation(SparsePoly(f5), inf).has_value());
  const RationalFn r(SparsePoly::parse(f5, "T^2"), SparsePoly::parse(f5, "T^5+1"));
  CHECK(*valuation(r, inf) == 3);
  CHECK(*valuation(r, at_t) == 2);
  CHECK(*valuation(r, Place::finite(SparsePoly::parse(f5, "T+1"))) == -5);
}

TEST_CASE("residue fields") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto f9 = FiniteField::make(3, 2, 1);
  std::mt19937 rng(6);
  for (const auto& ell : {SparsePoly::parse(f5, "T+3"), SparsePoly::parse(f5, "T^2+2"), primes_of_degree(f9, 2)[5],
                          primes_of_degree(f9, 1)[4]}) {
    const ResidueField fl(ell);
    CHECK(fl.field()->order().value() == [&] {
      std::uint64_t n = 1;
      for (int i = 0; i < ell.degree(); ++i) n *= ell.base()->order().value();
      return n;
    }());
    CHECK(ell.eval(fl.t()).is_zero());
    for (int trial = 0; trial < 30; ++trial) {
      const SparsePoly a = random_poly(ell.base(), rng, 5), b = random_poly(ell.base(), rng, 5);
      CHECK(fl.reduce(a * b) == fl.reduce(a) * fl.reduce(b));
      CHECK(fl.reduce(a + b) == fl.reduce(a) + fl.reduce(b));
      CHECK(fl.lift(fl.reduce(a)) == divmod(a, ell).second);
    }
  }
  CHECK_THROWS(ResidueField(SparsePoly::parse(f5, "T^2+T")));
}
