#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "drinfeld/drinfeld_core.hpp"

using namespace drinfeld;

TEST_CASE("reduction at (T) is stable of rank r-1") {
  for (unsigned q : {5U, 7U}) {
    const auto fq = FiniteField::make(q, 1, 1);
    for (unsigned r : {3U, 5U}) {
      const auto d = DrinfeldModule::default_family(fq, r);
      const auto red = reduce_mod(d, SparsePoly::T(fq));
      CHECK(red.type == ReductionType::StableBad);
      CHECK(red.reduced_rank == r - 1);
      CHECK(red.phi_T == SkewF::tau(red.field(), r - 1));
      const auto good = reduce_mod(d, SparsePoly::parse(fq, "T+1"));
      CHECK(good.type == ReductionType::Good);
      CHECK(good.reduced_rank == r);
    }
  }
}

TEST_CASE("height and torsion in the characteristic") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto d = DrinfeldModule::default_family(f5, 3);
  for (const auto& p : primes_of_degree(f5, 1)) {
    if (p == SparsePoly::T(f5)) continue;
    const auto red = reduce_mod(d, p);
    const auto h = height(red);
    CHECK(h.h == 2);
    CHECK(h.consistent);
    CHECK(torsion_at_char(red, 1) == 1);
    CHECK(torsion_at_char(red, 2) == 2);
  }
  // Carlitz has height 1 everywhere.
  const auto c = DrinfeldModule::carlitz(f5);
  const auto red = reduce_mod(c, SparsePoly::parse(f5, "T^2+2"));
  CHECK(height(red).h == 1);
  CHECK(torsion_at_char(red, 1) == 0);
}

TEST_CASE("torsion points are killed by phi_ell and Frobenius acts linearly") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto d = DrinfeldModule::default_family(f5, 3);
  for (const auto& [ps, ls] : {std::pair{"T+4", "T+3"}, {"T^2+2", "T+3"}, {"T^2+T+2", "T^2+2"}}) {
    const auto red = reduce_mod(d, SparsePoly::parse(f5, ps));
    const SparsePoly ell = SparsePoly::parse(f5, ls);
    const auto ts = torsion_space(red, ell);
    CHECK(ts.basis.size() == 3 * std::size_t(ell.degree()));
    CHECK(ts.module_basis.size() == 3);
    const SkewF phl = map_coefficients(phi_of(red, ell), ts.emb);
    for (const auto& w : ts.basis) CHECK(linearized_eval(phl, w).is_zero());
    // phi[ell] has exactly q^{r deg ell} points in the splitting field.
    CHECK(kernel_dimension(phl, ts.ext) == ts.basis.size());
    // Frobenius of w_k is the k-th column of the matrix.
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<FieldElem> col;
      for (std::size_t i = 0; i < 3; ++i) col.push_back(ts.frobenius_matrix.at(i, k));
      CHECK(torsion_element(red, ts, col) == ts.module_basis[k].frobenius_pow(std::int64_t(red.degree())));
    }
    CHECK(ts.charpoly == ts.frobenius_matrix.charpoly());
    CHECK(ts.charpoly == motive_frobenius_charpoly(red, ell));
    CHECK(ts.splitting_degree == torsion_splitting_degree(red, ell));
  }
}

TEST_CASE("torsion over F_9 agrees with the motive") {
  const auto f9 = FiniteField::make(3, 2, 1);
  const auto d = DrinfeldModule::default_family(f9, 3);
  const auto primes = primes_of_degree(f9, 1);
  for (std::size_t i = 1; i < 4; ++i) {
    const auto red = reduce_mod(d, primes[i]);
    const SparsePoly& ell = primes[i + 3];
    CHECK(torsion_space(red, ell).charpoly == motive_frobenius_charpoly(red, ell));
  }
}

TEST_CASE("quotient isogenies") {
  const auto f5 = FiniteField::make(5, 1, 1);
  const auto d = DrinfeldModule::default_family(f5, 3);
  const auto red = reduce_mod(d, SparsePoly::parse(f5, "T+4"));
  const auto ts = torsion_space(red, SparsePoly::parse(f5, "T+2"));  // x^3+x^2+3 has a root
  const auto ev = roots(ts.charpoly);
  REQUIRE_FALSE(ev.empty());
  auto shifted = ts.frobenius_matrix - MatrixFq::identity(ts.fl->field(), 3).scaled(ev.front());
  const FieldElem x = torsion_element(red, ts, shifted.kernel_basis().front());
  const auto line = fl_span_basis(red, ts, {x});
  CHECK(line.size() == 1);
  for (const auto& X : {std::vector<FieldElem>{}, line, ts.basis}) {
    const Isogeny iso = quotient_by_kernel(red, ts, X);
    CHECK(iso.u * iso.source_T == iso.target_T * iso.u);
    CHECK(iso.u.degree() == std::int64_t(X.size()));
    CHECK(iso.target_T.degree() == 3);
    CHECK(kernel_dimension(map_coefficients(iso.u, ts.emb), ts.ext) == X.size());
  }
  // A line that Frobenius moves is rejected.
  std::vector<FieldElem> moved{ts.module_basis[0]};
  const auto fr = ts.frobenius_matrix;
  if (!(fr.at(1, 0).is_zero() && fr.at(2, 0).is_zero())) {
    CHECK_THROWS_AS(quotient_by_kernel(red, ts, fl_span_basis(red, ts, moved)), QuotientError);
  }
}
