#pragma once

// The twisted polynomial ring K{tau} with tau*c = c^q*tau, for K either the
// polynomial ring A (coefficients SparsePoly) or a finite field (coefficients
// FieldElem), and the Drinfeld modules phi: A -> K{tau} built on it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drinfeld/function_ring.hpp"

namespace drinfeld {

class DivisionError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

template <class C>
struct SkewTraits;

template <>
struct SkewTraits<FieldElem> {
  static FieldElem zero(const FieldPtr& k) { return k->zero(); }
  static FieldElem one(const FieldPtr& k) { return k->one(); }
  static FieldElem twist(const FieldElem& c, std::int64_t i) { return c.frobenius_pow(i); }
  static FieldElem from_base(const FieldPtr& k, const FieldElem& c) { return k->embed_base(c); }
  static std::optional<FieldElem> divide(const FieldElem& a, const FieldElem& b) { return a / b; }
  static std::string str(const FieldElem& c) { return c.to_string("x"); }
};

template <>
struct SkewTraits<SparsePoly> {
  static SparsePoly zero(const FieldPtr& k) { return SparsePoly(k); }
  static SparsePoly one(const FieldPtr& k) { return SparsePoly::from_int(k, 1); }
  static SparsePoly twist(const SparsePoly& c, std::int64_t i) { return c.frobenius_twist(i); }
  static SparsePoly from_base(const FieldPtr&, const FieldElem& c) { return SparsePoly::constant(c); }
  static std::optional<SparsePoly> divide(const SparsePoly& a, const SparsePoly& b) { return exact_div(a, b); }
  static std::string str(const SparsePoly& c) { return c.to_string(); }
};

template <class C>
class SkewPoly {
public:
  using Traits = SkewTraits<C>;
  struct Term {
    std::int64_t exp;
    C coeff;
  };

  // ring: the coefficient field itself, or F_q for polynomial coefficients.
  explicit SkewPoly(FieldPtr ring) : ring_(std::move(ring)) {}
  SkewPoly(FieldPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) { normalize(); }

  static SkewPoly constant(const FieldPtr& ring, const C& c) { return monomial(ring, c, 0); }
  static SkewPoly one(const FieldPtr& ring) { return constant(ring, Traits::one(ring)); }
  static SkewPoly tau(const FieldPtr& ring, std::int64_t k = 1) { return monomial(ring, Traits::one(ring), k); }
  static SkewPoly monomial(const FieldPtr& ring, const C& c, std::int64_t k) {
    SkewPoly f(ring);
    if (k < 0) throw std::invalid_argument("negative tau exponent");
    if (!c.is_zero()) f.terms_.push_back({k, c});
    return f;
  }

  const FieldPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t degree() const { return terms_.empty() ? -1 : terms_.back().exp; }
  std::int64_t lowest_degree() const { return terms_.empty() ? -1 : terms_.front().exp; }
  const C& leading() const {
    if (terms_.empty()) throw std::domain_error("leading coefficient of zero skew polynomial");
    return terms_.back().coeff;
  }
  C coeff(std::int64_t k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, std::int64_t e) { return t.exp < e; });
    if (it != terms_.end() && it->exp == k) return it->coeff;
    return Traits::zero(ring_);
  }

  SkewPoly operator+(const SkewPoly& o) const {
    check_ring(o);
    std::vector<Term> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return SkewPoly(ring_, std::move(t));
  }
  SkewPoly operator-() const {
    SkewPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  SkewPoly operator-(const SkewPoly& o) const { return *this + (-o); }

  // Product under tau^i c = c^{q^i} tau^i. The right factor's coefficients
  // are twisted incrementally as the left exponents increase.
  SkewPoly operator*(const SkewPoly& o) const {
    check_ring(o);
    if (is_zero() || o.is_zero()) return SkewPoly(ring_);
    std::vector<Term> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    std::vector<C> tw;
    tw.reserve(o.terms_.size());
    for (const auto& b : o.terms_) tw.push_back(b.coeff);
    std::int64_t at = 0;
    for (const auto& a : terms_) {
      if (a.exp != at) {
        for (auto& c : tw) c = Traits::twist(c, a.exp - at);
        at = a.exp;
      }
      for (std::size_t j = 0; j < tw.size(); ++j) {
        std::int64_t e;
        if (__builtin_add_overflow(a.exp, o.terms_[j].exp, &e)) throw std::overflow_error("tau exponent overflow");
        prod.push_back({e, a.coeff * tw[j]});
      }
    }
    return SkewPoly(ring_, std::move(prod));
  }

  // Left scalar multiplication c * f.
  SkewPoly scaled(const C& c) const {
    SkewPoly r(ring_);
    if (c.is_zero()) return r;
    for (const auto& t : terms_) r.terms_.push_back({t.exp, c * t.coeff});
    r.normalize();
    return r;
  }

  // f * tau^k: only exponents move.
  SkewPoly shifted(std::int64_t k) const {
    SkewPoly r = *this;
    for (auto& t : r.terms_) t.exp += k;
    return r;
  }

  SkewPoly pow(std::uint64_t n) const {
    SkewPoly result = one(ring_);
    SkewPoly b = *this;
    while (n) {
      if (n & 1) result = result * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return result;
  }

  bool operator==(const SkewPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].exp != o.terms_[i].exp || !(terms_[i].coeff == o.terms_[i].coeff)) return false;
    }
    return true;
  }
  bool operator!=(const SkewPoly& o) const { return !(*this == o); }

  // "(c0) + (c1)*t + (c2)*t^2", ascending in tau.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + Traits::str(t.coeff) + ")";
      if (t.exp == 1) out += "*t";
      if (t.exp > 1) out += "*t^" + std::to_string(t.exp);
    }
    return out;
  }

private:
  void check_ring(const SkewPoly& o) const {
    if (!same_field(ring_, o.ring_)) throw std::invalid_argument("skew polynomials over different coefficient rings");
  }
  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (t.exp < 0) throw std::invalid_argument("negative tau exponent");
      if (!out.empty() && out.back().exp == t.exp) {
        out.back().coeff = out.back().coeff + t.coeff;
      } else {
        out.push_back(std::move(t));
      }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coeff.is_zero(); }), out.end());
    terms_ = std::move(out);
  }

  FieldPtr ring_;
  std::vector<Term> terms_;
};

using SkewA = SkewPoly<SparsePoly>;
using SkewF = SkewPoly<FieldElem>;

// f = Q*g + R with deg R < deg g. Over A this throws DivisionError when a
// leading coefficient does not divide exactly.
template <class C>
std::pair<SkewPoly<C>, SkewPoly<C>> divmod_right(const SkewPoly<C>& f, const SkewPoly<C>& g) {
  using Traits = SkewTraits<C>;
  if (g.is_zero()) throw std::domain_error("right division by zero skew polynomial");
  const std::int64_t k = g.degree();
  const C& b = g.leading();
  std::map<std::int64_t, C> r;
  for (const auto& t : f.terms()) r.emplace(t.exp, t.coeff);
  std::vector<typename SkewPoly<C>::Term> q;
  while (!r.empty()) {
    auto top = std::prev(r.end());
    if (top->first < k) break;
    const std::int64_t s = top->first - k;
    auto c = Traits::divide(top->second, Traits::twist(b, s));
    if (!c) throw DivisionError("leading coefficient does not divide; extend scalars");
    // The top term cancels exactly and is erased inside this loop.
    for (const auto& t : g.terms()) {
      C v = -(*c * Traits::twist(t.coeff, s));
      auto it = r.find(t.exp + s);
      if (it == r.end()) {
        r.emplace(t.exp + s, std::move(v));
      } else {
        it->second = it->second + v;
        if (it->second.is_zero()) r.erase(it);
      }
    }
    q.push_back({s, std::move(*c)});
  }
  std::vector<typename SkewPoly<C>::Term> rem;
  for (auto& [e, c] : r) rem.push_back({e, c});
  return {SkewPoly<C>(f.ring(), std::move(q)), SkewPoly<C>(f.ring(), std::move(rem))};
}

// Sum c_i x^{q^i} for f over a finite field containing x.
FieldElem linearized_eval(const SkewF& f, const FieldElem& x);

// Push a skew polynomial over K into a larger field via an embedding.
SkewF map_coefficients(const SkewF& f, const Embedding& emb);

class DrinfeldModule {
public:
  // g[0] must be T (generic characteristic); g.back() != 0.
  DrinfeldModule(FieldPtr fq, std::vector<SparsePoly> g);

  // phi_T = T + tau^{r-1} + T^{q-1} tau^r
  static DrinfeldModule default_family(const FieldPtr& fq, unsigned r);
  // C_T = T + tau
  static DrinfeldModule carlitz(const FieldPtr& fq);

  const FieldPtr& base() const { return fq_; }
  unsigned rank() const { return unsigned(g_.size() - 1); }
  std::uint64_t q() const { return fq_->base_order(); }
  const std::vector<SparsePoly>& coefficients() const { return g_; }
  const SparsePoly& coefficient(unsigned i) const { return g_.at(i); }
  const SkewA& phi_T() const { return phi_t_; }
  bool is_default_family() const;

private:
  FieldPtr fq_;
  std::vector<SparsePoly> g_;
  SkewA phi_t_;
};

// a -> phi_a.
SkewA phi_of(const DrinfeldModule& d, const SparsePoly& a);

// Horner evaluation of a in a skew ring given the image of T and the map on
// scalars. Shared by the generic and the reduced modules.
template <class C, class ScalarMap>
SkewPoly<C> evaluate_in(const SkewPoly<C>& image_of_t, const SparsePoly& a, ScalarMap&& scalar) {
  const FieldPtr& ring = image_of_t.ring();
  SkewPoly<C> acc(ring);
  if (a.is_zero()) return acc;
  const auto& terms = a.terms();
  std::map<std::int64_t, SkewPoly<C>> powers;
  auto power = [&](std::int64_t n) -> const SkewPoly<C>& {
    auto it = powers.find(n);
    if (it == powers.end()) it = powers.emplace(n, image_of_t.pow(std::uint64_t(n))).first;
    return it->second;
  };
  acc = SkewPoly<C>::constant(ring, scalar(terms.back().coeff));
  for (std::size_t i = terms.size() - 1; i-- > 0;) {
    acc = acc * power(terms[i + 1].exp - terms[i].exp) + SkewPoly<C>::constant(ring, scalar(terms[i].coeff));
  }
  if (terms.front().exp > 0) acc = acc * power(terms.front().exp);
  return acc;
}

}  // namespace drinfeld
