#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drinfeld/chebotarev.hpp"

using namespace drinfeld;

namespace {

FieldPtr gf(std::uint32_t p, unsigned e = 1) { return FiniteField::make(p, e, 1); }

BigInt sum_counts(const GLDistribution& g) {
  BigInt s = 0;
  for (const auto& [k, c] : g.counts) s += c;
  return s;
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(gl_order(3, 3) == 11232);
  CHECK(gl_order(3, 5) == 1488000);
  CHECK(gl_order(1, 7) == 6);
}

TEST_CASE("rank one is uniform on F^*") {
  const auto g = gl_charpoly_distribution(1, gf(7), GLBackend::Formula);
  CHECK(g.counts.size() == 6);
  for (const auto& [k, c] : g.counts) CHECK(c == 1);
}

TEST_CASE("enumeration and formula agree") {
  for (const auto& f : {gf(3), gf(2, 2), gf(5)}) {
    const auto a = gl_charpoly_distribution(3, f, GLBackend::Enumerate, 50'000'000, 2);
    const auto b = gl_charpoly_distribution(3, f, GLBackend::Formula);
    CHECK(a.counts == b.counts);
    CHECK(sum_counts(a) == a.total);
  }
  CHECK(gl_charpoly_distribution(2, gf(3), GLBackend::Enumerate).counts ==
        gl_charpoly_distribution(2, gf(3), GLBackend::Formula).counts);
}

TEST_CASE("enumeration respects the budget") {
  CHECK_THROWS_AS(gl_charpoly_distribution(3, gf(5), GLBackend::Enumerate, 1000), BudgetExceeded);
}

TEST_CASE("irreducible cubics make up about a third of GL_3(F_5)") {
  const auto g = gl_charpoly_distribution(3, gf(5), GLBackend::Formula);
  BigInt irr = 0;
  for (const auto& [k, c] : g.counts) {
    if (is_irreducible(charkey_poly(g.field, k))) irr += c;
  }
  CHECK(irr == 480000);
  CHECK(std::abs(static_cast<double>(BigRational(irr, g.total)) - 1.0 / 3) < 0.02);
  CHECK(gl_charpoly_distribution(3, gf(7)).counts.size() == 294);
}

TEST_CASE("degree one primes follow the closed form") {
  const auto f7 = gf(7);
  const auto d = DrinfeldModule::default_family(f7, 3);
  const SparsePoly ell = SparsePoly::parse(f7, "T-1");
  const auto rep = sample_frobenii(d, ell, 1);
  CHECK(rep.samples.size() == 5);
  for (const auto& s : rep.samples) {
    CHECK(s.det_ok);
    const FieldElem c = ResidueField(ell).reduce(s.prime);
    CHECK(s.charpoly.to_string() == FieldPoly(rep.fl->field(), {-c, c.field()->zero(), c.field()->one(),
                                                                c.field()->one()}).to_string());
  }
  CHECK_FALSE(surjectivity_evidence(rep).consistent);  // too few samples
}

TEST_CASE("distance shrinks with depth") {
  const auto f5 = gf(5);
  const auto d = DrinfeldModule::default_family(f5, 3);
  const SparsePoly ell = SparsePoly::parse(f5, "T-1");
  SampleOptions opt;
  opt.threads = 2;
  const auto r3 = sample_frobenii(d, ell, 3, opt);
  const auto r4 = sample_frobenii(d, ell, 4, opt);
  CHECK(r4.samples.size() > r3.samples.size());
  CHECK(r4.irreducible_seen);
  CHECK(r4.det_covers);
  WARN(r4.tv_distance < r3.tv_distance);
  for (const auto& s : r4.samples) CHECK(s.det_ok);
}

TEST_CASE("sampling is deterministic across thread counts") {
  const auto f5 = gf(5);
  const auto d = DrinfeldModule::default_family(f5, 3);
  const SparsePoly ell = SparsePoly::parse(f5, "T+2");
  SampleOptions one, four;
  four.threads = 4;
  const auto a = sample_frobenii(d, ell, 3, one), b = sample_frobenii(d, ell, 3, four);
  CHECK(a.empirical == b.empirical);
  CHECK(a.tv_exact == b.tv_exact);
}

TEST_CASE("reducible image is flagged") {
  // phi_T = T - (T+1) tau + tau^3 kills F_q, a rational line in phi[T], so
  // every Frobenius has eigenvalue 1 there.
  const auto f5 = gf(5);
  const SparsePoly T = SparsePoly::T(f5);
  const DrinfeldModule d(f5, {T, -(T + SparsePoly::from_int(f5, 1)), SparsePoly(f5), SparsePoly::from_int(f5, 1)});
  const auto rep = sample_frobenii(d, T, 3);
  const auto v = surjectivity_evidence(rep);
  CHECK_FALSE(rep.irreducible_seen);
  CHECK_FALSE(v.consistent);
  CHECK(v.note == kSurjectivityConstantNote);
}

TEST_CASE("an empty sample is flagged") {
  const auto f5 = gf(5);
  SampleReport empty(SparsePoly::T(f5));
  const auto v = surjectivity_evidence(empty);
  CHECK_FALSE(v.consistent);
  REQUIRE_FALSE(v.reasons.empty());
  CHECK(v.reasons.front() == "no samples");
}
