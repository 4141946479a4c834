#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drinfeld/frobenius_charpoly.hpp"

using namespace drinfeld;

TEST_CASE("closed form at linear primes") {
  for (unsigned q : {5U, 7U}) {
    const auto fq = FiniteField::make(q, 1, 1);
    for (unsigned r : {3U, 5U}) {
      const auto d = DrinfeldModule::default_family(fq, r);
      for (unsigned c = 1; c < q; ++c) {
        const SparsePoly p = SparsePoly::T(fq) - SparsePoly::from_int(fq, c);
        const CharPoly cp = charpoly_linear_system(d, p);
        CHECK(cp.a[1] == SparsePoly::from_int(fq, 1));
        for (unsigned i = 2; i < r; ++i) CHECK(cp.a[i].is_zero());
        CHECK(cp.a[r] == -p);
        CHECK(cp.resolution == "unique");
      }
    }
  }
}

TEST_CASE("Carlitz Frobenius is x - p") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto c = DrinfeldModule::carlitz(f5);
  for (unsigned deg = 1; deg <= 3; ++deg) {
    for (const auto& p : primes_of_degree(f5, deg)) {
      const CharPoly cp = charpoly_linear_system(c, p);
      CHECK(cp.a[1] == -p);
      CHECK(cp.epsilon == -f5->one());
    }
  }
}

TEST_CASE("reduction mod ell matches the torsion oracle") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto d = DrinfeldModule::default_family(f5, 3);
  const CharPoly cp = charpoly_linear_system(d, SparsePoly::parse(f5, "T^2+2"));
  CHECK(cp.to_string() == "x^3+4*x^2+2*T*x+4*T^2+3");
  const auto red = reduce_mod(d, cp.prime);
  for (const char* l : {"T+2", "T+3", "T+4", "T^2+T+2"}) {
    const SparsePoly ell = SparsePoly::parse(f5, l);
    // The quadratic ell has a huge torsion splitting field; the motive covers it.
    if (ell.degree() == 1) CHECK(reduce_charpoly(cp, ResidueField(ell)) == charpoly_mod_l(red, ell, FrobeniusSource::Torsion));
    CHECK(reduce_charpoly(cp, ResidueField(ell)) == charpoly_mod_l(red, ell, FrobeniusSource::Motive));
  }
  // The T - 1 table: ell = T - 3 gives x^3 + x^2 + 3.
  const FieldPoly m = charpoly_mod_l(d, SparsePoly::parse(f5, "T-1"), SparsePoly::parse(f5, "T-3"));
  CHECK(m.to_string() == "x^3+x^2+3");
}

TEST_CASE("e > 1: F_9 coefficients") {
  const auto f9 = FiniteField::make(3, 2, 1);
  const auto d = DrinfeldModule::default_family(f9, 3);
  const SparsePoly t = SparsePoly::T(f9);
  const auto linear = primes_of_degree(f9, 1);
  for (unsigned deg = 1; deg <= 2; ++deg) {
    const auto ps = primes_of_degree(f9, deg);
    for (std::size_t k = 0; k < ps.size() && k < 6; ++k) {
      if (ps[k] == t) continue;
      const auto red = reduce_mod(d, ps[k]);
      const CharPoly cp = charpoly_linear_system(d, red);
      CHECK(residual(red, cp).is_zero());
      CHECK(cp.a[3] == ps[k] * cp.epsilon);
      const SparsePoly& ell = linear[ps[k] == linear[1] ? 2 : 1];
      const auto src = deg == 1 ? FrobeniusSource::Torsion : FrobeniusSource::Motive;
      CHECK(reduce_charpoly(cp, ResidueField(ell)) == charpoly_mod_l(red, ell, src));
    }
  }
}

TEST_CASE("relaxed bounds recover the sharp solution") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto d = DrinfeldModule::default_family(f5, 3);
  CharPolyOptions relaxed;
  relaxed.bounds = DegreeBounds::Relaxed;
  for (unsigned deg = 1; deg <= 3; ++deg) {
    for (const auto& p : primes_of_degree(f5, deg)) {
      if (p == SparsePoly::T(f5)) continue;
      const CharPoly a = charpoly_linear_system(d, p), b = charpoly_linear_system(d, p, relaxed);
      CHECK(a.a == b.a);
      for (unsigned i = 1; i <= 3; ++i) CHECK(b.a[i].degree() <= std::int64_t(i * deg / 3));
    }
  }
}

TEST_CASE("determinant law and epsilon") {
  const auto f7 = FiniteField::make(7, 1, 1);
  const auto d = DrinfeldModule::default_family(f7, 3);
  const SparsePoly ell = SparsePoly::parse(f7, "T-1");
  for (const auto& p : primes_of_degree(f7, 2)) {
    const auto red = reduce_mod(d, p);
    const CharPoly cp = charpoly_linear_system(d, red);
    CHECK(det_check(red, cp, ell).ok);
    CHECK(cp.epsilon == epsilon_of(d, p));
    CHECK(cp.a[3] == p * cp.epsilon);
  }
}

TEST_CASE("batch results do not depend on threads") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto d = DrinfeldModule::default_family(f5, 3);
  const auto primes = primes_of_degree(f5, 3);
  const auto one = charpoly_batch(d, primes, 1), four = charpoly_batch(d, primes, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].a == four[i].a);
}

TEST_CASE("bad reduction is rejected") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto d = DrinfeldModule::default_family(f5, 3);
  CHECK_THROWS_AS(charpoly_linear_system(d, SparsePoly::T(f5)), std::invalid_argument);
}
