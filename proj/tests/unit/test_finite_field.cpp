#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "drinfeld/finite_field.hpp"

using namespace drinfeld;

namespace {

FieldElem random_elem(const FieldPtr& f, std::mt19937& rng) {
  drinfeld::fp::Coeffs c(f->degree());
  for (auto& x : c) x = rng() % f->characteristic();
  return f->element(c);
}

}  // namespace

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(3);
  for (auto f : {FiniteField::make(5, 1, 3), FiniteField::make(3, 2, 2), FiniteField::make(2, 1, 8),
                 FiniteField::make(65521, 1, 2)}) {
    for (int i = 0; i < 200; ++i) {
      const FieldElem a = random_elem(f, rng), b = random_elem(f, rng), c = random_elem(f, rng);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a - a == f->zero());
      if (!a.is_zero()) CHECK(a * a.inverse() == f->one());
      if (!b.is_zero()) CHECK((a / b) * b == a);
    }
  }
}

TEST_CASE("multiplicative group order and Frobenius") {
  const auto f = FiniteField::make(3, 1, 4);  // 81 elements
  const std::uint64_t n = f->order().value();
  CHECK(n == 81);
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < n; ++i) {
    const FieldElem x = f->from_index(i);
    CHECK(x.index() == i);
    seen.insert(x.index());
    if (!x.is_zero()) CHECK(x.pow(n - 1) == f->one());
    CHECK(x.frobenius_pow(1) == x.pow(3));
    CHECK(x.frobenius_pow(4) == x);
    CHECK(x.frobenius_pow(-1).frobenius_pow(1) == x);
    CHECK(x.frobenius_p(2) == x.pow(9));
  }
  CHECK(seen.size() == n);
}

TEST_CASE("the copy of F_q is a subfield fixed by q-Frobenius") {
  const auto f = FiniteField::make(3, 2, 3);  // F_{9^3}
  const auto fq = f->base();
  CHECK(fq->order().value() == 9);
  for (std::uint64_t i = 0; i < 9; ++i) {
    for (std::uint64_t j = 0; j < 9; ++j) {
      const FieldElem a = fq->from_index(i), b = fq->from_index(j);
      CHECK(f->embed_base(a * b) == f->embed_base(a) * f->embed_base(b));
      CHECK(f->embed_base(a + b) == f->embed_base(a) + f->embed_base(b));
    }
    const FieldElem y = f->embed_base(fq->from_index(i));
    CHECK(y.frobenius_pow(1) == y);
    CHECK(f->to_base(y).value() == fq->from_index(i));
  }
  std::size_t in_base = 0;
  std::mt19937 rng(1);
  for (int i = 0; i < 300; ++i) in_base += f->to_base(random_elem(f, rng)).has_value();
  CHECK(in_base < 50);
}

TEST_CASE("embeddings are homomorphisms compatible with F_q") {
  std::mt19937 rng(9);
  for (unsigned e : {1U, 2U}) {
    const auto small = FiniteField::make(5, e, 2), big = FiniteField::make(5, e, 6);
    const auto emb = Embedding::find(small, big);
    for (int i = 0; i < 100; ++i) {
      const FieldElem a = random_elem(small, rng), b = random_elem(small, rng);
      CHECK(emb(a * b) == emb(a) * emb(b));
      CHECK(emb(a + b) == emb(a) + emb(b));
      CHECK(emb.preimage(emb(a)).value() == a);
    }
    const auto fq = small->base();
    for (std::uint64_t i = 0; i < fq->order().value(); ++i) {
      CHECK(emb(small->embed_base(fq->from_index(i))) == big->embed_base(fq->from_index(i)));
    }
  }
}

TEST_CASE("printing") {
  const auto f = FiniteField::make(7, 1, 1);
  CHECK(f->from_int(-1).to_string() == "6");
  const auto g = FiniteField::make(5, 2, 1);
  CHECK(g->modulus() == drinfeld::fp::Coeffs{2, 0, 1});
  CHECK((g->generator() + g->one()).to_string() == "z+1");
}
