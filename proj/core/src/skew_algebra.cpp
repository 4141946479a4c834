#include "drinfeld/skew_algebra.hpp"

namespace drinfeld {

FieldElem linearized_eval(const SkewF& f, const FieldElem& x) {
  FieldElem acc = x.field()->zero();
  FieldElem xq = x;
  std::int64_t at = 0;
  for (const auto& t : f.terms()) {
    if (t.exp != at) {
      xq = xq.frobenius_pow(t.exp - at);
      at = t.exp;
    }
    acc += t.coeff * xq;
  }
  return acc;
}

SkewF map_coefficients(const SkewF& f, const Embedding& emb) {
  std::vector<SkewF::Term> t;
  t.reserve(f.terms().size());
  for (const auto& term : f.terms()) t.push_back({term.exp, emb(term.coeff)});
  return SkewF(emb.target(), std::move(t));
}

DrinfeldModule::DrinfeldModule(FieldPtr fq, std::vector<SparsePoly> g) : fq_(std::move(fq)), g_(std::move(g)), phi_t_(fq_) {
  if (fq_->relative_degree() != 1) throw std::invalid_argument("Drinfeld module base must be F_q itself");
  if (g_.size() < 2) throw std::invalid_argument("Drinfeld module needs rank >= 1");
  if (g_.front() != SparsePoly::T(fq_)) throw std::invalid_argument("constant term of phi_T must be T");
  if (g_.back().is_zero()) throw std::invalid_argument("leading coefficient g_r must be nonzero");
  std::vector<SkewA::Term> t;
  for (std::size_t i = 0; i < g_.size(); ++i) t.push_back({std::int64_t(i), g_[i]});
  phi_t_ = SkewA(fq_, std::move(t));
}

DrinfeldModule DrinfeldModule::default_family(const FieldPtr& fq, unsigned r) {
  if (r < 2) throw std::invalid_argument("the family T + tau^{r-1} + T^{q-1} tau^r needs r >= 2");
  std::vector<SparsePoly> g(r + 1, SparsePoly(fq));
  g[0] = SparsePoly::T(fq);
  g[r - 1] = g[r - 1] + SparsePoly::from_int(fq, 1);
  g[r] = SparsePoly::monomial(fq->one(), std::int64_t(fq->base_order() - 1));
  return DrinfeldModule(fq, std::move(g));
}

DrinfeldModule DrinfeldModule::carlitz(const FieldPtr& fq) {
  return DrinfeldModule(fq, {SparsePoly::T(fq), SparsePoly::from_int(fq, 1)});
}

bool DrinfeldModule::is_default_family() const {
  const unsigned r = rank();
  if (r < 2) return false;
  return g_ == default_family(fq_, r).g_;
}

SkewA phi_of(const DrinfeldModule& d, const SparsePoly& a) {
  if (!same_field(a.base(), d.base())) throw std::invalid_argument("polynomial over a different F_q");
  return evaluate_in(d.phi_T(), a, [](const FieldElem& c) { return SparsePoly::constant(c); });
}

}  // namespace drinfeld
