#include "drinfeld/function_ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace drinfeld {

// --------------------------------------------------------------- SparsePoly

SparsePoly::SparsePoly(FieldPtr base) : base_(std::move(base)) {
  if (!base_) throw std::invalid_argument("polynomial without coefficient field");
}

SparsePoly::SparsePoly(FieldPtr base, std::vector<Term> terms) : base_(std::move(base)), terms_(std::move(terms)) {
  if (!base_) throw std::invalid_argument("polynomial without coefficient field");
  normalize();
}

void SparsePoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (t.exp < 0) throw std::invalid_argument("negative exponent in polynomial");
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coeff.is_zero(); }), out.end());
  terms_ = std::move(out);
}

SparsePoly SparsePoly::constant(const FieldElem& c) { return monomial(c, 0); }

SparsePoly SparsePoly::from_int(const FieldPtr& base, std::int64_t c) { return constant(base->from_int(c)); }

SparsePoly SparsePoly::monomial(const FieldElem& c, std::int64_t exp) {
  SparsePoly f(c.field());
  if (!c.is_zero()) f.terms_.push_back({exp, c});
  if (exp < 0) throw std::invalid_argument("negative exponent in polynomial");
  return f;
}

SparsePoly SparsePoly::T(const FieldPtr& base) { return monomial(base->one(), 1); }

const FieldElem& SparsePoly::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return terms_.back().coeff;
}

FieldElem SparsePoly::coefficient(std::int64_t exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp, [](const Term& t, std::int64_t e) { return t.exp < e; });
  if (it != terms_.end() && it->exp == exp) return it->coeff;
  return base_->zero();
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].exp < o.terms_[j].exp)) {
      out.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].exp < terms_[i].exp) {
      out.push_back(o.terms_[j++]);
    } else {
      FieldElem c = terms_[i].coeff + o.terms_[j].coeff;
      if (!c.is_zero()) out.push_back({terms_[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  SparsePoly r(base_);
  r.terms_ = std::move(out);
  return r;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + (-o); }

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  if (is_zero() || o.is_zero()) return SparsePoly(base_);
  if (o.is_constant()) return *this * o.terms_[0].coeff;
  if (is_constant()) return o * terms_[0].coeff;
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      std::int64_t e;
      if (__builtin_add_overflow(a.exp, b.exp, &e)) throw std::overflow_error("exponent overflow in polynomial product");
      prod.push_back({e, a.coeff * b.coeff});
    }
  }
  return SparsePoly(base_, std::move(prod));
}

SparsePoly SparsePoly::operator*(const FieldElem& c) const {
  if (c.is_zero()) return SparsePoly(base_);
  SparsePoly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exp != o.terms_[i].exp || terms_[i].coeff != o.terms_[i].coeff) return false;
  }
  return true;
}

bool SparsePoly::operator<(const SparsePoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::int64_t e = degree(); e >= 0; --e) {
    FieldElem a = coefficient(e), b = o.coefficient(e);
    if (a != b) return a < b;
  }
  return false;
}

SparsePoly SparsePoly::frobenius_twist(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("negative Frobenius twist on polynomials");
  std::int64_t scale = 1;
  const std::int64_t q = std::int64_t(base_->base_order());
  for (std::int64_t i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(scale, q, &scale)) throw std::overflow_error("exponent overflow in Frobenius twist");
  }
  SparsePoly r = *this;
  for (auto& t : r.terms_) {
    if (__builtin_mul_overflow(t.exp, scale, &t.exp)) throw std::overflow_error("exponent overflow in Frobenius twist");
  }
  return r;
}

SparsePoly SparsePoly::pow(std::uint64_t n) const {
  SparsePoly result = from_int(base_, 1);
  SparsePoly b = *this;
  while (n) {
    if (n & 1) result = result * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return result;
}

SparsePoly SparsePoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading_coeff().inverse();
}

SparsePoly SparsePoly::shift(std::int64_t k) const {
  SparsePoly r = *this;
  for (auto& t : r.terms_) {
    if (__builtin_add_overflow(t.exp, k, &t.exp)) throw std::overflow_error("exponent overflow in shift");
    if (t.exp < 0) throw std::invalid_argument("shift produces a negative exponent");
  }
  return r;
}

FieldElem SparsePoly::eval(const FieldElem& t) const {
  const FieldPtr& f = t.field();
  FieldElem acc = f->zero();
  if (terms_.empty()) return acc;
  // Horner over the sparse exponent gaps.
  std::int64_t prev = terms_.back().exp;
  acc = f->embed_base(terms_.back().coeff);
  for (std::size_t i = terms_.size() - 1; i-- > 0;) {
    acc = acc * t.pow(std::uint64_t(prev - terms_[i].exp)) + f->embed_base(terms_[i].coeff);
    prev = terms_[i].exp;
  }
  return acc * t.pow(std::uint64_t(prev));
}

std::string SparsePoly::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  const bool prime = base_->degree() == 1;
  std::string out;
  for (std::size_t i = terms_.size(); i-- > 0;) {
    const auto& t = terms_[i];
    std::string cs = t.coeff.to_string("z");
    if (!prime && (cs.find('+') != std::string::npos || cs.find('*') != std::string::npos)) cs = "(" + cs + ")";
    if (!out.empty()) out += "+";
    if (t.exp == 0) {
      out += cs;
      continue;
    }
    if (!t.coeff.is_one()) out += cs + "*";
    out += var;
    if (t.exp > 1) out += "^" + std::to_string(t.exp);
  }
  return out;
}

// ------------------------------------------------------------------- parser

namespace {

class Parser {
public:
  Parser(const FieldPtr& base, std::string_view text) : base_(base), s_(text) {}

  SparsePoly parse_all() {
    skip();
    if (i_ == s_.size()) fail("empty polynomial");
    SparsePoly f = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected token");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& msg) {
    std::size_t end = i_;
    while (end < s_.size() && !std::isspace(static_cast<unsigned char>(s_[end])) && end - i_ < 8) ++end;
    std::string tok = i_ < s_.size() ? std::string(s_.substr(i_, std::max<std::size_t>(1, end - i_))) : "<end>";
    throw ParseError(msg, tok, i_);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool starts_factor() {
    skip();
    if (i_ >= s_.size()) return false;
    const char c = s_[i_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'T' || c == 'z' || c == '(';
  }

  SparsePoly sum() {
    SparsePoly acc(base_);
    bool negate = false;
    if (peek('+')) {
      ++i_;
    } else if (peek('-')) {
      ++i_;
      negate = true;
    }
    SparsePoly t = product();
    acc = negate ? -t : t;
    while (true) {
      if (peek('+')) {
        ++i_;
        acc = acc + product();
      } else if (peek('-')) {
        ++i_;
        acc = acc - product();
      } else {
        break;
      }
    }
    return acc;
  }

  SparsePoly product() {
    if (!starts_factor()) fail("expected a term");
    SparsePoly acc = factor();
    while (true) {
      if (peek('*')) {
        ++i_;
        if (!starts_factor()) fail("expected a factor after '*'");
        acc = acc * factor();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  std::int64_t integer() {
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected an integer");
    std::int64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, s_[i_] - '0', &v)) fail("integer overflow");
      ++i_;
    }
    return v;
  }

  SparsePoly exponentiate(SparsePoly f) {
    if (peek('^')) {
      ++i_;
      const std::int64_t n = integer();
      if (f.terms().size() == 1) {
        std::int64_t e;
        if (__builtin_mul_overflow(f.terms()[0].exp, n, &e)) fail("exponent overflow");
        return SparsePoly::monomial(f.terms()[0].coeff.pow(std::uint64_t(n)), e);
      }
      return f.pow(std::uint64_t(n));
    }
    return f;
  }

  SparsePoly factor() {
    skip();
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      std::uint64_t v = 0;
      const std::uint64_t p = base_->characteristic();
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        v = (v * 10 + std::uint64_t(s_[i_] - '0')) % p;
        ++i_;
      }
      (void)start;
      return exponentiate(SparsePoly::from_int(base_, std::int64_t(v)));
    }
    if (c == 'T') {
      ++i_;
      return exponentiate(SparsePoly::T(base_));
    }
    if (c == 'z') {
      if (base_->degree() == 1) fail("'z' is only defined when q is not prime");
      ++i_;
      return exponentiate(SparsePoly::constant(base_->generator()));
    }
    if (c == '(') {
      ++i_;
      SparsePoly inner = sum();
      if (!peek(')')) fail("expected ')'");
      ++i_;
      return exponentiate(inner);
    }
    fail("unexpected token");
  }

  const FieldPtr& base_;
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

SparsePoly SparsePoly::parse(const FieldPtr& base, std::string_view text) { return Parser(base, text).parse_all(); }

// --------------------------------------------------------- ring operations

std::pair<SparsePoly, SparsePoly> divmod(const SparsePoly& a, const SparsePoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const FieldPtr& base = a.base();
  std::map<std::int64_t, FieldElem> r;
  for (const auto& t : a.terms()) r.emplace(t.exp, t.coeff);
  std::vector<SparsePoly::Term> q;
  const std::int64_t db = b.degree();
  const FieldElem inv = b.leading_coeff().inverse();
  while (!r.empty()) {
    auto top = std::prev(r.end());
    if (top->first < db) break;
    const std::int64_t shift = top->first - db;
    const FieldElem c = top->second * inv;
    q.push_back({shift, c});
    for (const auto& t : b.terms()) {
      const std::int64_t e = t.exp + shift;
      auto it = r.find(e);
      FieldElem v = -(c * t.coeff);
      if (it == r.end()) {
        r.emplace(e, v);
      } else {
        it->second += v;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  }
  std::vector<SparsePoly::Term> rem;
  for (auto& [e, c] : r) rem.push_back({e, c});
  return {SparsePoly(base, std::move(q)), SparsePoly(base, std::move(rem))};
}

std::optional<SparsePoly> exact_div(const SparsePoly& a, const SparsePoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

SparsePoly gcd(SparsePoly a, SparsePoly b) {
  while (!b.is_zero()) {
    SparsePoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FieldPoly to_field_poly(const SparsePoly& f) {
  if (f.degree() > 10'000'000) throw std::length_error("polynomial too large for dense conversion");
  std::vector<FieldElem> c(std::size_t(f.degree() + 1), f.base()->zero());
  for (const auto& t : f.terms()) c[std::size_t(t.exp)] = t.coeff;
  return FieldPoly(f.base(), std::move(c));
}

SparsePoly from_field_poly(const FieldPoly& f) {
  std::vector<SparsePoly::Term> t;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (!f.coeffs()[i].is_zero()) t.push_back({std::int64_t(i), f.coeffs()[i]});
  }
  return SparsePoly(f.field(), std::move(t));
}

bool is_irreducible(const SparsePoly& f) {
  if (f.degree() < 1) return false;
  return is_irreducible(to_field_poly(f));
}

std::vector<SparsePoly> primes_of_degree(const FieldPtr& fq, unsigned d) {
  std::vector<SparsePoly> out;
  for (const auto& g : monic_irreducibles(fq, d)) out.push_back(from_field_poly(g));
  return out;
}

// ------------------------------------------------------------------- places

Place Place::infinity() { return Place(); }

Place Place::finite(SparsePoly generator) {
  if (!generator.is_monic() || !is_irreducible(generator)) {
    throw std::invalid_argument("place generator must be monic irreducible: " + generator.to_string());
  }
  Place pl;
  pl.gen_ = std::move(generator);
  return pl;
}

const SparsePoly& Place::generator() const {
  if (!gen_) throw std::logic_error("the infinite place has no generator");
  return *gen_;
}

std::string Place::to_string() const { return gen_ ? gen_->to_string() : "inf"; }

std::optional<std::int64_t> valuation(const SparsePoly& f, const Place& v) {
  if (f.is_zero()) return std::nullopt;
  if (v.is_infinity()) return -f.degree();
  const SparsePoly& g = v.generator();
  if (g.degree() == 1 && g.terms().size() == 1) return f.lowest_exponent();
  std::int64_t n = 0;
  SparsePoly cur = f;
  while (true) {
    auto q = exact_div(cur, g);
    if (!q) return n;
    cur = std::move(*q);
    ++n;
  }
}

std::optional<std::int64_t> valuation(const RationalFn& f, const Place& v) {
  if (f.is_zero()) return std::nullopt;
  return *valuation(f.num(), v) - *valuation(f.den(), v);
}

// --------------------------------------------------------------- RationalFn

RationalFn::RationalFn(SparsePoly num) : num_(std::move(num)), den_(SparsePoly::from_int(num_.base(), 1)) {}

RationalFn::RationalFn(SparsePoly num, SparsePoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = SparsePoly::from_int(num_.base(), 1);
    return;
  }
  SparsePoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  const FieldElem lc = den_.leading_coeff().inverse();
  num_ = num_ * lc;
  den_ = den_ * lc;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
  return RationalFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator*(const RationalFn& o) const { return RationalFn(num_ * o.num_, den_ * o.den_); }

RationalFn RationalFn::operator/(const RationalFn& o) const {
  if (o.is_zero()) throw std::domain_error("division by the zero rational function");
  return RationalFn(num_ * o.den_, den_ * o.num_);
}

std::string RationalFn::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ------------------------------------------------------------- ResidueField

ResidueField::ResidueField(SparsePoly ell) : ell_(std::move(ell)) {
  if (!ell_.is_monic() || ell_.degree() < 1) throw std::invalid_argument("residue field needs a monic nonconstant prime");
  if (!is_irreducible(ell_)) throw std::invalid_argument("residue field of a reducible polynomial: " + ell_.to_string());
  const FieldPtr& fq = ell_.base();
  const std::uint32_t p = fq->characteristic();
  const unsigned e = fq->base_degree();
  const unsigned d = unsigned(ell_.degree());
  if (d == 1) {
    field_ = fq;
    t_ = -ell_.coefficient(0);
  } else if (e == 1) {
    fp::Coeffs mod(d + 1, 0);
    for (const auto& t : ell_.terms()) mod[std::size_t(t.exp)] = t.coeff.poly().empty() ? 0 : t.coeff.poly()[0];
    field_ = FiniteField::with_modulus(p, 1, d, mod);
    t_ = field_->generator();
  } else {
    field_ = FiniteField::make(p, e, d);
    std::vector<FieldElem> c(d + 1, field_->zero());
    for (const auto& t : ell_.terms()) c[std::size_t(t.exp)] = field_->embed_base(t.coeff);
    auto rts = roots_in_subfield(FieldPoly(field_, c), field_->degree());
    if (rts.empty()) throw std::logic_error("prime has no root in its residue field");
    t_ = rts.front();
  }
  if (e > 1) {
    const unsigned n = e * d;
    FpMatrix m(n, n, p);
    const FieldPtr& base = fq;
    FieldElem tj = field_->one();
    for (unsigned j = 0; j < d; ++j) {
      FieldElem zi = base->one();
      for (unsigned i = 0; i < e; ++i) {
        m.set_column(j * e + i, (field_->embed_base(zi) * tj).coords());
        zi *= base->generator();
      }
      tj *= t_;
    }
    lift_matrix_ = std::move(m);
  }
}

FieldElem ResidueField::reduce(const SparsePoly& f) const { return f.eval(t_); }

SparsePoly ResidueField::lift(const FieldElem& x) const {
  const FieldPtr& fq = ell_.base();
  if (!lift_matrix_) {
    std::vector<SparsePoly::Term> t;
    const auto& c = x.poly();
    if (ell_.degree() == 1) return SparsePoly::constant(fq->from_int(c.empty() ? 0 : c[0]));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i]) t.push_back({std::int64_t(i), fq->from_int(c[i])});
    }
    return SparsePoly(fq, std::move(t));
  }
  auto sol = lift_matrix_->solve(x.coords());
  if (!sol) throw std::logic_error("residue lift failed");
  const unsigned e = fq->base_degree();
  std::vector<SparsePoly::Term> t;
  for (std::int64_t j = 0; j < ell_.degree(); ++j) {
    fp::Coeffs c(sol->begin() + long(j * e), sol->begin() + long((j + 1) * e));
    FieldElem cj = fq->element(c);
    if (!cj.is_zero()) t.push_back({j, cj});
  }
  return SparsePoly(fq, std::move(t));
}

}  // namespace drinfeld
