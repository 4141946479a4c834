#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "drinfeld/skew_algebra.hpp"

using namespace drinfeld;

namespace {

SkewF random_skew(const FieldPtr& k, std::mt19937& rng, int deg) {
  std::vector<SkewF::Term> t;
  for (int i = 0; i <= deg; ++i) {
    drinfeld::fp::Coeffs c(k->degree());
    for (auto& x : c) x = rng() % k->characteristic();
    t.push_back({i, k->element(c)});
  }
  return SkewF(k, t);
}

}  // namespace

TEST_CASE("commutation rule and associativity") {
  std::mt19937 rng(13);
  const auto k = FiniteField::make(3, 2, 3);
  const FieldElem c = k->generator() + k->one();
  CHECK(SkewF::tau(k) * SkewF::constant(k, c) == SkewF::monomial(k, c.frobenius_pow(1), 1));
  for (int trial = 0; trial < 30; ++trial) {
    const SkewF a = random_skew(k, rng, 4), b = random_skew(k, rng, 3), d = random_skew(k, rng, 2);
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    CHECK(b.shifted(2) == b * SkewF::tau(k, 2));
  }
}

TEST_CASE("right division") {
  std::mt19937 rng(17);
  const auto k = FiniteField::make(5, 1, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const SkewF f = random_skew(k, rng, 7), g = random_skew(k, rng, 3);
    if (g.is_zero()) continue;
    const auto [q, r] = divmod_right(f, g);
    CHECK(q * g + r == f);
    CHECK(r.degree() < g.degree());
  }
  const auto f5 = FiniteField::make(5, 1, 1);
  const SkewA g(f5, {{0, SparsePoly::T(f5)}, {1, SparsePoly::T(f5)}});
  const SkewA exact = SkewA::tau(f5, 2) * g;
  CHECK(divmod_right(exact, g).second.is_zero());
  CHECK_THROWS_AS(divmod_right(SkewA::tau(f5, 2), g), DivisionError);
}

TEST_CASE("linearized evaluation is additive and turns products into composition") {
  std::mt19937 rng(19);
  const auto k = FiniteField::make(3, 1, 5);
  for (int trial = 0; trial < 30; ++trial) {
    const SkewF f = random_skew(k, rng, 3), g = random_skew(k, rng, 2);
    const FieldElem x = k->from_index(rng() % 243), y = k->from_index(rng() % 243);
    CHECK(linearized_eval(f, x + y) == linearized_eval(f, x) + linearized_eval(f, y));
    CHECK(linearized_eval(f * g, x) == linearized_eval(f, linearized_eval(g, x)));
  }
}

TEST_CASE("phi_T^2 for the default family") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto d = DrinfeldModule::default_family(f5, 3);
  CHECK(d.phi_T().to_string() == "(T) + (1)*t^2 + (T^4)*t^3");
  CHECK(phi_of(d, SparsePoly::parse(f5, "T^2")).to_string() ==
        "(T^2) + (T^25+T)*t^2 + (T^129+T^5)*t^3 + (1)*t^4 + (T^100+T^4)*t^5 + (T^504)*t^6");
  CHECK(d.is_default_family());
  CHECK_FALSE(DrinfeldModule::carlitz(f5).is_default_family());
}

TEST_CASE("phi is a ring homomorphism") {
  const auto f9 = FiniteField::make(3, 2, 1);
  const auto d = DrinfeldModule::default_family(f9, 3);
  const SparsePoly a = SparsePoly::parse(f9, "T^2+z*T+1"), b = SparsePoly::parse(f9, "(z+2)*T+z");
  CHECK(phi_of(d, a * b) == phi_of(d, a) * phi_of(d, b));
  CHECK(phi_of(d, b * a) == phi_of(d, a) * phi_of(d, b));
  CHECK(phi_of(d, a + b) == phi_of(d, a) + phi_of(d, b));
  CHECK(phi_of(d, SparsePoly::constant(f9->generator())) == SkewA::constant(f9, SparsePoly::constant(f9->generator())));
}

TEST_CASE("module construction checks") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto T = SparsePoly::T(f5);
  CHECK_THROWS(DrinfeldModule(f5, {T + SparsePoly::from_int(f5, 1), SparsePoly::from_int(f5, 1)}));
  CHECK_THROWS(DrinfeldModule(f5, {T, SparsePoly(f5)}));
  CHECK_THROWS(DrinfeldModule::default_family(f5, 1));
  CHECK(DrinfeldModule::default_family(f5, 2).rank() == 2);
}
